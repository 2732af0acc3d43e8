// thermsched: command-line front end for graph/library generation, thermal
// inquiries, floorplanning, scheduling, the two design flows and the
// benchmark harness. Every subcommand writes JSON (or a report) to -o,
// which defaults to stdout.

#include "thermsched/bench.hpp"
#include "thermsched/cosynth.hpp"
#include "thermsched/errors.hpp"
#include "thermsched/floorplan.hpp"
#include "thermsched/io.hpp"
#include "thermsched/scheduler.hpp"
#include "thermsched/taskgraph.hpp"
#include "thermsched/techlib.hpp"
#include "thermsched/thermal.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace thermsched;

namespace {

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

void emit(const std::string &path, const Json &j) {
  write_file(path, j.dump(2) + "\n");
}

Architecture load_arch(const std::string &arg) {
  if (arg.rfind("platform", 0) == 0 && arg.size() > 8 &&
      arg.find_first_not_of("0123456789", 8) == std::string::npos) {
    return platform_architecture(std::stoul(arg.substr(8)), 0);
  }
  return parse_architecture(read_file(arg));
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Thermal-aware task allocation and scheduling toolkit"};
  app.require_subcommand(1);
  std::string out = "-";

  // gen-graph
  auto *genGraph = app.add_subcommand("gen-graph", "Generate a random task graph");
  std::size_t ggTasks = 0, ggEdges = 0;
  double ggDeadline = 0;
  std::uint64_t ggSeed = 0;
  genGraph->add_option("--tasks", ggTasks)->required();
  genGraph->add_option("--edges", ggEdges)->required();
  genGraph->add_option("--deadline", ggDeadline)->required();
  genGraph->add_option("--seed", ggSeed)->required();
  genGraph->add_option("-o,--output", out);

  // gen-lib
  auto *genLib = app.add_subcommand("gen-lib", "Generate a random technology library");
  std::size_t glTasks = 0, glTypes = 0;
  bool glIdentical = false;
  std::uint64_t glSeed = 0;
  genLib->add_option("--tasks", glTasks)->required();
  genLib->add_option("--pe-types", glTypes)->required();
  genLib->add_flag("--identical", glIdentical);
  genLib->add_option("--seed", glSeed)->required();
  genLib->add_option("-o,--output", out);

  // thermal
  auto *thermal = app.add_subcommand("thermal", "Steady-state block temperatures");
  std::string thFloorplan, thPowers;
  thermal->add_option("--floorplan", thFloorplan)->required();
  thermal->add_option("--powers", thPowers)->required();
  thermal->add_option("-o,--output", out);

  // floorplan
  auto *floorplan = app.add_subcommand("floorplan", "Thermal-aware GA floorplanning");
  std::string fpArch, fpLib, fpPowers;
  GaConfig ga;
  floorplan->add_option("--arch", fpArch)->required();
  floorplan->add_option("--lib", fpLib)->required();
  floorplan->add_option("--powers", fpPowers)->required();
  floorplan->add_option("--seed", ga.seed)->required();
  floorplan->add_option("--population", ga.populationSize);
  floorplan->add_option("--generations", ga.generations);
  floorplan->add_option("--mutation-rate", ga.mutationRate);
  floorplan->add_option("--tournament", ga.tournamentSize);
  floorplan->add_option("--w-area", ga.weights.wArea);
  floorplan->add_option("--w-temp", ga.weights.wTemp);
  floorplan->add_option("-o,--output", out);

  // schedule
  auto *sched = app.add_subcommand("schedule", "Run the list scheduler");
  std::string scGraph, scLib, scArch, scMode = "baseline", scFloorplan;
  Mode mode;
  sched->add_option("--graph", scGraph)->required();
  sched->add_option("--lib", scLib)->required();
  sched->add_option("--arch", scArch, "architecture file or platformN")->required();
  sched->add_option("--mode", scMode);
  sched->add_option("--term-weight", mode.termWeight);
  sched->add_flag("--raw-term", mode.rawTerm);
  sched->add_option("--floorplan", scFloorplan);
  sched->add_option("-o,--output", out);

  // cosynth
  auto *cosynth = app.add_subcommand("cosynth", "Co-synthesis flow");
  std::string csGraph, csLib, csMode = "baseline";
  std::size_t csMaxPes = 8;
  std::uint64_t csSeed = 1;
  cosynth->add_option("--graph", csGraph)->required();
  cosynth->add_option("--lib", csLib)->required();
  cosynth->add_option("--mode", csMode);
  cosynth->add_option("--max-pes", csMaxPes);
  cosynth->add_option("--seed", csSeed);
  cosynth->add_option("-o,--output", out);

  // platform
  auto *platform = app.add_subcommand("platform", "Platform-based flow");
  std::string plGraph, plLib, plMode = "baseline";
  std::size_t plPes = 4;
  platform->add_option("--graph", plGraph)->required();
  platform->add_option("--lib", plLib)->required();
  platform->add_option("--pes", plPes);
  platform->add_option("--mode", plMode);
  platform->add_option("-o,--output", out);

  // bench
  auto *bench = app.add_subcommand("bench", "Benchmark batch and report");
  std::string bProfiles = "builtin";
  std::string bModes = "baseline,h1,h2,h3,thermal";
  std::string bFlows = "cosynthesis,platform";
  std::string bSeeds = "1..20";
  std::string bFormat = "csv";
  bool bAggregate = false;
  BenchOptions bopts;
  bench->add_option("--profiles", bProfiles, "builtin or a list such as Bm1,Bm3");
  bench->add_option("--modes", bModes);
  bench->add_option("--flows", bFlows);
  bench->add_option("--seeds", bSeeds);
  bench->add_option("--format", bFormat);
  bench->add_flag("--aggregate", bAggregate);
  bench->add_option("--workers", bopts.workers);
  bench->add_option("--max-pes", bopts.maxPes);
  bench->add_option("--term-weight", bopts.termWeight);
  bench->add_flag("--raw-term", bopts.rawTerm);
  bench->add_option("-o,--output", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*genGraph) {
      emit(out, to_json(generate_random_graph(ggTasks, ggEdges, ggDeadline, ggSeed)));
    } else if (*genLib) {
      emit(out, to_json(generate_random_library(glTasks, glTypes, glIdentical, glSeed)));
    } else if (*thermal) {
      const ThermalConfig tcfg = thermal_config_from_env();
      const auto model = build_model(parse_floorplan(read_file(thFloorplan)), tcfg);
      const auto powers = parse_powers(read_file(thPowers));
      emit(out, to_json(solve_steady_state(model, powers, tcfg)));
    } else if (*floorplan) {
      const TechLibrary lib = parse_library(read_file(fpLib));
      const Architecture arch = parse_architecture(read_file(fpArch));
      const auto powers = parse_powers(read_file(fpPowers));
      emit(out, to_json(ga_floorplan(arch, lib, powers, ga,
                                     thermal_config_from_env())));
    } else if (*sched) {
      const ThermalConfig tcfg = thermal_config_from_env();
      const TaskGraph g = parse_task_graph(read_file(scGraph));
      const TechLibrary lib = parse_library(read_file(scLib));
      const Architecture arch = load_arch(scArch);
      mode.kind = parse_mode(scMode);
      std::optional<Floorplan> fp;
      if (!scFloorplan.empty()) {
        fp = parse_floorplan(read_file(scFloorplan));
      } else if (mode.kind == ModeKind::thermal) {
        fp = grid_floorplan(arch, lib);
      }
      const Schedule s = schedule(g, arch, lib, mode, fp ? &*fp : nullptr, tcfg);
      std::optional<TemperatureMap> temps;
      if (fp) {
        temps = schedule_temperatures(s, *fp, tcfg);
      }
      emit(out, to_json(s, g, temps));
    } else if (*cosynth) {
      const TaskGraph g = parse_task_graph(read_file(csGraph));
      const TechLibrary lib = parse_library(read_file(csLib));
      CosynthOptions opts;
      opts.thermal = thermal_config_from_env();
      const auto r = cosynthesize(g, lib, Mode{parse_mode(csMode)}, csMaxPes,
                                  csSeed, opts);
      emit(out, to_json(r, g));
    } else if (*platform) {
      const TaskGraph g = parse_task_graph(read_file(plGraph));
      const TechLibrary lib = parse_library(read_file(plLib));
      const auto r = platform_flow(g, lib, plPes, Mode{parse_mode(plMode)},
                                   thermal_config_from_env());
      emit(out, to_json(r, g));
    } else if (*bench) {
      bopts.thermal = thermal_config_from_env();
      std::vector<BenchProfile> profiles;
      const auto builtin = builtin_profiles();
      if (bProfiles == "builtin") {
        profiles = builtin;
      } else {
        for (const auto &name : split_list(bProfiles)) {
          auto it = std::find_if(builtin.begin(), builtin.end(),
                                 [&](const auto &p) { return p.name == name; });
          if (it == builtin.end()) {
            throw FormatError("unknown profile '" + name + "'");
          }
          profiles.push_back(*it);
        }
      }
      std::vector<ModeKind> modes;
      for (const auto &m : split_list(bModes)) {
        modes.push_back(parse_mode(m));
      }
      std::vector<Flow> flows;
      for (const auto &f : split_list(bFlows)) {
        flows.push_back(parse_flow(f));
      }
      const auto rows =
          run_benchmark(profiles, modes, flows, parse_seed_list(bSeeds), bopts);
      write_file(out, emit_report(rows, bFormat, bAggregate));
    }
  } catch (const thermsched::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

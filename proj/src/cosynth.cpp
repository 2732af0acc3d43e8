#include "thermsched/cosynth.hpp"

#include "thermsched/errors.hpp"
#include "thermsched/rng.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace thermsched {

namespace {

class Evaluator {
public:
  Evaluator(const TaskGraph &g, const TechLibrary &lib, const Mode &mode,
            std::uint64_t seed, const CosynthOptions &opts)
      : g_(g), lib_(lib), mode_(mode), seed_(seed), opts_(opts) {}

  CosynthResult run(const Architecture &arch,
                    const std::map<std::size_t, double> &estPower) const {
    CosynthResult r;
    r.arch = arch;
    if (arch.size() >= 2) {
      GaConfig ga = opts_.ga;
      ga.seed = floorplanSeed(arch);
      r.fp = ga_floorplan(arch, lib_, estPower, ga, opts_.thermal);
    } else {
      r.fp = grid_floorplan(arch, lib_);
    }
    r.sched = schedule(g_, arch, lib_, mode_, &r.fp, opts_.thermal);
    r.temps = schedule_temperatures(r.sched, r.fp, opts_.thermal);
    r.feasible = r.sched.meetsDeadline;
    return r;
  }

  double lookaheadMakespan(const Architecture &arch) const {
    const Floorplan fp = grid_floorplan(arch, lib_);
    return schedule(g_, arch, lib_, mode_, &fp, opts_.thermal).makespan;
  }

private:
  // same architecture composition, same floorplan
  std::uint64_t floorplanSeed(const Architecture &arch) const {
    std::uint64_t s = derive_seed(seed_, "cosynth-floorplan");
    for (std::size_t t : arch.typeIds()) {
      s = mix_seed(s, t);
    }
    return s;
  }

  const TaskGraph &g_;
  const TechLibrary &lib_;
  Mode mode_;
  std::uint64_t seed_;
  CosynthOptions opts_;
};

std::map<std::size_t, double>
carry_powers(const std::map<std::size_t, double> &previous,
             const std::vector<std::size_t> &keptIds, std::size_t newSize) {
  double mean = 0.0;
  for (const auto &[id, p] : previous) {
    mean += p;
  }
  mean = previous.empty() ? 1.0 : mean / static_cast<double>(previous.size());
  std::map<std::size_t, double> out;
  for (std::size_t i = 0; i < newSize; ++i) {
    if (i < keptIds.size()) {
      auto it = previous.find(keptIds[i]);
      out[i] = it != previous.end() ? it->second : mean;
    } else {
      out[i] = mean;
    }
  }
  return out;
}

} // namespace

CosynthResult cosynthesize(const TaskGraph &g, const TechLibrary &lib,
                           const Mode &mode, std::size_t maxPes,
                           std::uint64_t seed, const CosynthOptions &opts,
                           CosynthTrace *trace) {
  if (maxPes == 0) {
    throw FormatError("co-synthesis needs maxPes >= 1");
  }
  const Evaluator eval(g, lib, mode, seed, opts);

  std::size_t firstType = 0;
  double bestMean = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < lib.types(); ++p) {
    double sum = 0.0;
    for (const auto &t : g.tasks()) {
      sum += lib.wcet(t.typeRow, p);
    }
    const double mean = sum / static_cast<double>(g.size());
    if (mean < bestMean) {
      bestMean = mean;
      firstType = p;
    }
  }

  std::vector<std::size_t> types{firstType};
  std::map<std::size_t, double> estPower{{0, 1.0}};
  CosynthResult current;
  while (true) {
    const Architecture arch = Architecture::fromTypes(types);
    current = eval.run(arch, estPower);
    CosynthStep step;
    step.archTypes = types;
    step.makespan = current.sched.makespan;
    step.feasible = current.feasible;
    if (current.feasible || types.size() >= maxPes) {
      if (trace != nullptr) {
        trace->search.push_back(step);
      }
      break;
    }
    std::size_t pick = 0;
    double pickMakespan = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < lib.types(); ++p) {
      auto extended = types;
      extended.push_back(p);
      const double ms = eval.lookaheadMakespan(Architecture::fromTypes(extended));
      step.lookahead.push_back(ms);
      if (ms < pickMakespan) {
        pickMakespan = ms;
        pick = p;
      }
    }
    step.addedType = pick;
    if (trace != nullptr) {
      trace->search.push_back(step);
    }
    std::vector<std::size_t> ids(types.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ids[i] = i;
    }
    estPower = carry_powers(current.sched.averagePowers(), ids, types.size() + 1);
    types.push_back(pick);
  }

  if (current.feasible) {
    // Trim pass: walk instances from the back, dropping any that the
    // deadline does not need.
    for (std::size_t idx = types.size(); idx-- > 0;) {
      if (types.size() <= 1) {
        break;
      }
      std::vector<std::size_t> reduced;
      std::vector<std::size_t> keptIds;
      for (std::size_t i = 0; i < types.size(); ++i) {
        if (i != idx) {
          reduced.push_back(types[i]);
          keptIds.push_back(i);
        }
      }
      if (trace != nullptr) {
        ++trace->trimAttempts;
      }
      auto powers =
          carry_powers(current.sched.averagePowers(), keptIds, reduced.size());
      CosynthResult candidate = eval.run(Architecture::fromTypes(reduced), powers);
      if (candidate.feasible) {
        types = std::move(reduced);
        current = std::move(candidate);
        if (trace != nullptr) {
          trace->trimmed.push_back(types);
        }
      }
    }
  }
  return current;
}

CosynthResult platform_flow(const TaskGraph &g, const TechLibrary &lib,
                            std::size_t nPes, const Mode &mode,
                            const ThermalConfig &tcfg) {
  CosynthResult r;
  r.arch = platform_architecture(nPes, 0);
  r.fp = grid_floorplan(r.arch, lib);
  r.sched = schedule(g, r.arch, lib, mode, &r.fp, tcfg);
  r.temps = schedule_temperatures(r.sched, r.fp, tcfg);
  r.feasible = r.sched.meetsDeadline;
  return r;
}

} // namespace thermsched

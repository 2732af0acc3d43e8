#include "thermsched/bench.hpp"

#include "thermsched/cosynth.hpp"
#include "thermsched/errors.hpp"
#include "thermsched/rng.hpp"
#include "thermsched/taskgraph.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>
#include <tuple>

namespace thermsched {

std::string BenchProfile::label() const {
  std::ostringstream os;
  os << name << '/' << nTasks << '/' << nEdges << '/' << deadline;
  return os.str();
}

std::vector<BenchProfile> builtin_profiles() {
  return {
      {"Bm1", 19, 19, 790.0},
      {"Bm2", 35, 40, 1500.0},
      {"Bm3", 39, 43, 1650.0},
      {"Bm4", 51, 60, 2000.0},
  };
}

std::string_view to_string(Flow flow) {
  return flow == Flow::cosynthesis ? "cosynthesis" : "platform";
}

Flow parse_flow(std::string_view name) {
  if (name == "cosynthesis") {
    return Flow::cosynthesis;
  }
  if (name == "platform") {
    return Flow::platform;
  }
  throw FormatError("unknown flow '" + std::string(name) + "'");
}

namespace {

struct Cell {
  const BenchProfile *profile;
  ModeKind mode;
  Flow flow;
  std::uint64_t seed;
};

ReportRow run_cell(const Cell &cell, const BenchOptions &opts) {
  ReportRow row;
  row.profile = cell.profile->name;
  row.mode = cell.mode;
  row.flow = cell.flow;
  row.seed = cell.seed;
  try {
    const BenchProfile &p = *cell.profile;
    const TaskGraph g = generate_random_graph(
        p.nTasks, p.nEdges, p.deadline, derive_seed(cell.seed, p.name + "/graph"));
    const std::uint64_t libSeed = derive_seed(cell.seed, p.name + "/library");
    const Mode mode{cell.mode, opts.termWeight, opts.rawTerm};
    CosynthResult r;
    if (cell.flow == Flow::cosynthesis) {
      const TechLibrary lib = generate_random_library(
          p.nTasks, opts.cosynthPeTypes, false, libSeed, opts.library);
      CosynthOptions co{opts.thermal, opts.ga};
      r = cosynthesize(g, lib, mode, opts.maxPes,
                       derive_seed(cell.seed, p.name + "/floorplan"), co);
    } else {
      const TechLibrary lib = generate_random_library(
          p.nTasks, opts.cosynthPeTypes, true, libSeed, opts.library);
      r = platform_flow(g, lib, opts.platformPes, mode, opts.thermal);
    }
    row.totalPow = r.sched.totalAvgPower;
    row.maxTemp = r.temps.maxTemp;
    row.avgTemp = r.temps.avgTemp;
    row.feasible = r.feasible;
    row.makespan = r.sched.makespan;
    row.pes = r.arch.size();
  } catch (const std::exception &e) {
    ReportRow failed;
    failed.profile = row.profile;
    failed.mode = row.mode;
    failed.flow = row.flow;
    failed.seed = row.seed;
    failed.error = e.what();
    row = std::move(failed);
    if (row.error.empty()) {
      row.error = "unknown error";
    }
  }
  return row;
}

auto row_key(const ReportRow &r) {
  return std::make_tuple(std::cref(r.profile), r.flow, r.mode, r.seed);
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char &c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '|') {
      c = ';';
    }
  }
  return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string &s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) {
      throw FormatError("bad number '" + s + "'");
    }
    return v;
  } catch (const std::logic_error &) {
    throw FormatError("bad number '" + s + "'");
  }
}

std::uint64_t to_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("bad integer '" + std::string(s) + "'");
  }
  return v;
}

const char *kCsvHeader =
    "profile,flow,mode,seed,totalPow,maxTemp,avgTemp,makespan,pes,feasible,"
    "error";

bool is_power_mode(ModeKind k) {
  return k == ModeKind::h1 || k == ModeKind::h2 || k == ModeKind::h3;
}

} // namespace

std::vector<ReportRow> run_benchmark(const std::vector<BenchProfile> &profiles,
                                     const std::vector<ModeKind> &modes,
                                     const std::vector<Flow> &flows,
                                     const std::vector<std::uint64_t> &seeds,
                                     const BenchOptions &opts) {
  if (!profiles.empty() && seeds.empty()) {
    throw FormatError("benchmark needs at least one seed");
  }
  std::vector<Cell> cells;
  for (const auto &p : profiles) {
    for (Flow f : flows) {
      for (ModeKind m : modes) {
        for (std::uint64_t s : seeds) {
          cells.push_back({&p, m, f, s});
        }
      }
    }
  }

  std::vector<ReportRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      rows[i] = run_cell(cells[i], opts);
    }
  };
  const std::size_t nWorkers =
      std::max<std::size_t>(1, std::min(opts.workers, cells.size()));
  if (nWorkers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < nWorkers; ++w) {
      pool.emplace_back(worker);
    }
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow &a, const ReportRow &b) {
                     return row_key(a) < row_key(b);
                   });
  return rows;
}

std::map<Flow, FlowSummary> summarize(const std::vector<ReportRow> &rows) {
  std::map<Flow, FlowSummary> out;
  std::map<Flow, std::map<ModeKind, std::size_t>> counts;
  // (flow, profile, seed) -> rows of that cell
  std::map<std::tuple<Flow, std::string, std::uint64_t>,
           std::vector<const ReportRow *>>
      cells;
  for (const auto &r : rows) {
    if (!r.error.empty()) {
      continue;
    }
    auto &s = out[r.flow];
    s.meanTotalPow[r.mode] += r.totalPow;
    s.meanMaxTemp[r.mode] += r.maxTemp;
    s.meanAvgTemp[r.mode] += r.avgTemp;
    ++counts[r.flow][r.mode];
    cells[{r.flow, r.profile, r.seed}].push_back(&r);
  }
  for (auto &[flow, s] : out) {
    for (auto &[mode, n] : counts[flow]) {
      s.meanTotalPow[mode] /= static_cast<double>(n);
      s.meanMaxTemp[mode] /= static_cast<double>(n);
      s.meanAvgTemp[mode] /= static_cast<double>(n);
    }
  }

  std::map<Flow, std::size_t> wins;
  for (const auto &[key, members] : cells) {
    const ReportRow *thermal = nullptr;
    const ReportRow *bestPower = nullptr;
    for (const ReportRow *r : members) {
      if (r->mode == ModeKind::thermal) {
        thermal = r;
      } else if (is_power_mode(r->mode)) {
        if (bestPower == nullptr || r->avgTemp < bestPower->avgTemp ||
            (r->avgTemp == bestPower->avgTemp && r->maxTemp < bestPower->maxTemp)) {
          bestPower = r;
        }
      }
    }
    if (thermal == nullptr || bestPower == nullptr) {
      continue;
    }
    auto &s = out[std::get<0>(key)];
    ++s.comparedCells;
    s.meanMaxTempReduction += bestPower->maxTemp - thermal->maxTemp;
    s.meanAvgTempReduction += bestPower->avgTemp - thermal->avgTemp;
    if (thermal->maxTemp < bestPower->maxTemp) {
      ++wins[std::get<0>(key)];
    }
  }
  for (auto &[flow, s] : out) {
    if (s.comparedCells > 0) {
      const auto n = static_cast<double>(s.comparedCells);
      s.meanMaxTempReduction /= n;
      s.meanAvgTempReduction /= n;
      s.thermalMaxWinRate = static_cast<double>(wins[flow]) / n;
    }
  }
  return out;
}

std::string emit_report(const std::vector<ReportRow> &rows,
                        std::string_view format, bool aggregate) {
  std::ostringstream os;
  if (format == "csv") {
    os << kCsvHeader << '\n';
    for (const auto &r : rows) {
      os << sanitize(r.profile) << ',' << to_string(r.flow) << ','
         << to_string(r.mode) << ',' << r.seed << ',' << fmt6(r.totalPow) << ','
         << fmt6(r.maxTemp) << ',' << fmt6(r.avgTemp) << ',' << fmt6(r.makespan)
         << ',' << r.pes << ',' << (r.feasible ? 1 : 0) << ','
         << sanitize(r.error) << '\n';
    }
    if (aggregate) {
      os << '\n' << "flow,key,mode,value\n";
      for (const auto &[flow, s] : summarize(rows)) {
        const auto f = to_string(flow);
        for (const auto &[mode, v] : s.meanTotalPow) {
          os << f << ",meanTotalPow," << to_string(mode) << ',' << fmt6(v) << '\n';
        }
        for (const auto &[mode, v] : s.meanMaxTemp) {
          os << f << ",meanMaxTemp," << to_string(mode) << ',' << fmt6(v) << '\n';
        }
        for (const auto &[mode, v] : s.meanAvgTemp) {
          os << f << ",meanAvgTemp," << to_string(mode) << ',' << fmt6(v) << '\n';
        }
        if (s.comparedCells > 0) {
          os << f << ",comparedCells,," << s.comparedCells << '\n';
          os << f << ",meanMaxTempReduction,," << fmt6(s.meanMaxTempReduction)
             << '\n';
          os << f << ",meanAvgTempReduction,," << fmt6(s.meanAvgTempReduction)
             << '\n';
          os << f << ",thermalMaxWinRate,," << fmt6(s.thermalMaxWinRate) << '\n';
        }
      }
    }
    return os.str();
  }

  if (format != "md" && format != "markdown") {
    throw FormatError("unknown report format '" + std::string(format) + "'");
  }

  // Means over seeds per (profile, mode, flow), laid out like a heuristic
  // comparison table: one group per profile, one row per mode.
  struct Acc {
    double pow = 0, maxT = 0, avgT = 0;
    std::size_t n = 0, feasible = 0;
  };
  std::vector<std::string> profiles;
  std::vector<Flow> flows;
  std::map<std::tuple<std::string, ModeKind, Flow>, Acc> acc;
  std::map<std::string, std::vector<ModeKind>> modesOf;
  for (const auto &r : rows) {
    if (std::find(profiles.begin(), profiles.end(), r.profile) == profiles.end()) {
      profiles.push_back(r.profile);
    }
    if (std::find(flows.begin(), flows.end(), r.flow) == flows.end()) {
      flows.push_back(r.flow);
    }
    auto &ms = modesOf[r.profile];
    if (std::find(ms.begin(), ms.end(), r.mode) == ms.end()) {
      ms.push_back(r.mode);
    }
    if (!r.error.empty()) {
      continue;
    }
    auto &a = acc[{r.profile, r.mode, r.flow}];
    a.pow += r.totalPow;
    a.maxT += r.maxTemp;
    a.avgT += r.avgTemp;
    a.feasible += r.feasible ? 1 : 0;
    ++a.n;
  }
  std::sort(flows.begin(), flows.end());

  os << "| Profile | Mode |";
  for (Flow f : flows) {
    os << ' ' << to_string(f) << " Total Pow. | Max Temp. | Avg Temp. | Feasible |";
  }
  os << "\n|---|---|";
  for (std::size_t i = 0; i < flows.size(); ++i) {
    os << "---:|---:|---:|---:|";
  }
  os << '\n';
  for (const auto &p : profiles) {
    auto ms = modesOf[p];
    std::sort(ms.begin(), ms.end());
    for (ModeKind m : ms) {
      os << "| " << sanitize(p) << " | " << to_string(m) << " |";
      for (Flow f : flows) {
        auto it = acc.find({p, m, f});
        if (it == acc.end() || it->second.n == 0) {
          os << " - | - | - | - |";
          continue;
        }
        const Acc &a = it->second;
        const auto n = static_cast<double>(a.n);
        os << ' ' << fmt2(a.pow / n) << " | " << fmt2(a.maxT / n) << " | "
           << fmt2(a.avgT / n) << " | " << a.feasible << '/' << a.n << " |";
      }
      os << '\n';
    }
  }

  if (aggregate) {
    os << "\n| Flow | Mode | mean Total Pow. | mean Max Temp. | mean Avg Temp. |\n"
       << "|---|---|---:|---:|---:|\n";
    const auto summary = summarize(rows);
    for (const auto &[flow, s] : summary) {
      for (const auto &[mode, v] : s.meanMaxTemp) {
        os << "| " << to_string(flow) << " | " << to_string(mode) << " | "
           << fmt2(s.meanTotalPow.at(mode)) << " | " << fmt2(v) << " | "
           << fmt2(s.meanAvgTemp.at(mode)) << " |\n";
      }
    }
    os << "\n| Flow | cells | meanMaxTempReduction | meanAvgTempReduction | "
          "thermalMaxWinRate |\n|---|---:|---:|---:|---:|\n";
    for (const auto &[flow, s] : summary) {
      if (s.comparedCells == 0) {
        continue;
      }
      os << "| " << to_string(flow) << " | " << s.comparedCells << " | "
         << fmt2(s.meanMaxTempReduction) << " | " << fmt2(s.meanAvgTempReduction)
         << " | " << fmt2(s.thermalMaxWinRate) << " |\n";
    }
  }
  return os.str();
}

std::vector<ReportRow> parse_csv_report(std::string_view document) {
  std::vector<ReportRow> rows;
  std::istringstream in{std::string(document)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw FormatError("report does not start with the expected CSV header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) {
      break;
    }
    auto f = split(line, ',');
    if (f.size() != 11) {
      throw FormatError("report line has " + std::to_string(f.size()) +
                        " fields, expected 11");
    }
    ReportRow r;
    r.profile = f[0];
    r.flow = parse_flow(f[1]);
    r.mode = parse_mode(f[2]);
    r.seed = to_u64(f[3]);
    r.totalPow = to_double(f[4]);
    r.maxTemp = to_double(f[5]);
    r.avgTemp = to_double(f[6]);
    r.makespan = to_double(f[7]);
    r.pes = static_cast<std::size_t>(to_u64(f[8]));
    if (f[9] != "0" && f[9] != "1") {
      throw FormatError("feasible flag must be 0 or 1");
    }
    r.feasible = f[9] == "1";
    r.error = f[10];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (const auto &part : split(text, ',')) {
    if (part.empty()) {
      continue;
    }
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_u64(part));
      continue;
    }
    const std::uint64_t lo = to_u64(std::string_view(part).substr(0, dots));
    const std::uint64_t hi = to_u64(std::string_view(part).substr(dots + 2));
    if (hi < lo) {
      throw FormatError("empty seed range '" + part + "'");
    }
    for (std::uint64_t s = lo; s <= hi; ++s) {
      out.push_back(s);
    }
  }
  if (out.empty()) {
    throw FormatError("seed list is empty");
  }
  return out;
}

} // namespace thermsched

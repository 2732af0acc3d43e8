#pragma once

#include "thermsched/floorplan.hpp"
#include "thermsched/scheduler.hpp"
#include "thermsched/techlib.hpp"
#include "thermsched/thermal.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace thermsched {

struct BenchProfile {
  std::string name;
  std::size_t nTasks = 0;
  std::size_t nEdges = 0;
  double deadline = 0.0;

  /// "name/tasks/edges/deadline"
  std::string label() const;
};

/// Bm1..Bm4 with their task, edge and deadline counts.
std::vector<BenchProfile> builtin_profiles();

enum class Flow { cosynthesis, platform };

std::string_view to_string(Flow flow);
Flow parse_flow(std::string_view name);

struct ReportRow {
  std::string profile;
  ModeKind mode = ModeKind::baseline;
  Flow flow = Flow::cosynthesis;
  std::uint64_t seed = 0;
  double totalPow = 0.0; ///< W
  double maxTemp = 0.0;  ///< degrees C
  double avgTemp = 0.0;  ///< degrees C
  bool feasible = false;
  double makespan = 0.0;
  std::size_t pes = 0;
  /// Empty unless the cell failed; the numeric fields are then zero.
  std::string error;
};

struct BenchOptions {
  ThermalConfig thermal;
  GaConfig ga;
  LibraryGenConfig library;
  std::size_t maxPes = 8;
  std::size_t platformPes = 4;
  std::size_t cosynthPeTypes = 4;
  double termWeight = 1.0;
  bool rawTerm = false;
  /// Cells evaluated concurrently; results do not depend on it.
  std::size_t workers = 1;
};

/// One row per (profile, mode, flow, seed), sorted by (profile, flow, mode,
/// seed). Graph and libraries depend only on (seed, profile).
std::vector<ReportRow> run_benchmark(const std::vector<BenchProfile> &profiles,
                                     const std::vector<ModeKind> &modes,
                                     const std::vector<Flow> &flows,
                                     const std::vector<std::uint64_t> &seeds,
                                     const BenchOptions &opts = {});

/// Per-flow summary of a report.
struct FlowSummary {
  std::map<ModeKind, double> meanTotalPow;
  std::map<ModeKind, double> meanMaxTemp;
  std::map<ModeKind, double> meanAvgTemp;
  /// Thermal versus the best power heuristic of each (profile, seed) cell;
  /// present only when both are in the report.
  std::size_t comparedCells = 0;
  double meanMaxTempReduction = 0.0;
  double meanAvgTempReduction = 0.0;
  double thermalMaxWinRate = 0.0;
};

std::map<Flow, FlowSummary> summarize(const std::vector<ReportRow> &rows);

/// format: "csv" or "md"/"markdown". Throws FormatError otherwise.
std::string emit_report(const std::vector<ReportRow> &rows,
                        std::string_view format, bool aggregate);

/// Reads the row section of a CSV report (stops at the first blank line).
std::vector<ReportRow> parse_csv_report(std::string_view document);

/// "1..20" or "1,2,5" or a mix such as "1..3,9".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

} // namespace thermsched

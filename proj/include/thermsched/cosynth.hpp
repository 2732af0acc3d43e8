#pragma once

#include "thermsched/floorplan.hpp"
#include "thermsched/scheduler.hpp"
#include "thermsched/taskgraph.hpp"
#include "thermsched/techlib.hpp"
#include "thermsched/thermal.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace thermsched {

struct CosynthResult {
  Architecture arch;
  Floorplan fp;
  Schedule sched;
  TemperatureMap temps;
  bool feasible = false;
};

struct CosynthOptions {
  ThermalConfig thermal;
  /// seed is ignored; it is derived from the flow seed and the architecture.
  GaConfig ga;
};

/// One architecture evaluated during the greedy search.
struct CosynthStep {
  std::vector<std::size_t> archTypes;
  double makespan = 0.0;
  bool feasible = false;
  /// Makespan of arch + one instance of each PE type (empty when the
  /// search stopped at this step).
  std::vector<double> lookahead;
  std::optional<std::size_t> addedType;
};

struct CosynthTrace {
  std::vector<CosynthStep> search;
  /// Architectures accepted by the trim pass, in order.
  std::vector<std::vector<std::size_t>> trimmed;
  std::size_t trimAttempts = 0;
};

/// Greedy architecture search around the scheduler: start with one instance
/// of the type with the lowest mean WCET; floorplan, schedule and check the
/// deadline; while infeasible and below maxPes add the PE type whose
/// addition gives the smallest lookahead makespan (lower type id on ties).
/// A feasible architecture is then trimmed instance by instance while the
/// deadline stays met.
CosynthResult cosynthesize(const TaskGraph &g, const TechLibrary &lib,
                           const Mode &mode, std::size_t maxPes,
                           std::uint64_t seed, const CosynthOptions &opts = {},
                           CosynthTrace *trace = nullptr);

/// Fixed platform of nPes instances of PE type 0 on a grid floorplan.
CosynthResult platform_flow(const TaskGraph &g, const TechLibrary &lib,
                            std::size_t nPes, const Mode &mode,
                            const ThermalConfig &tcfg = {});

} // namespace thermsched

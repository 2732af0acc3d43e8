#pragma once

#include "thermsched/geometry.hpp"
#include "thermsched/taskgraph.hpp"
#include "thermsched/techlib.hpp"
#include "thermsched/thermal.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thermsched {

/// Selection term of the dynamic criticality.
///   baseline: none
///   h1: power of the candidate task on the candidate PE
///   h2: cumulative average power of the candidate PE
///   h3: energy of the candidate task on the candidate PE
///   thermal: average block temperature of a steady-state thermal inquiry
enum class ModeKind { baseline, h1, h2, h3, thermal };

inline constexpr ModeKind kAllModes[] = {ModeKind::baseline, ModeKind::h1,
                                         ModeKind::h2, ModeKind::h3,
                                         ModeKind::thermal};

std::string_view to_string(ModeKind kind);
/// Throws FormatError on an unknown name.
ModeKind parse_mode(std::string_view name);

struct Mode {
  ModeKind kind = ModeKind::baseline;
  double termWeight = 1.0;
  /// Skip the per-step min-max normalization and subtract the raw term.
  bool rawTerm = false;
};

/// Guards divisions by a time that may still be zero.
inline constexpr double kTimeEpsilon = 1e-9;

struct SchedulerState {
  std::vector<double> peAvail;        ///< per instance, ticks
  std::vector<double> taskReady;      ///< per task, ticks
  std::vector<double> assignedEnergy; ///< per instance, joules
  double makespanSoFar = 0.0;

  SchedulerState(std::size_t nTasks, std::size_t nPes)
      : peAvail(nPes, 0.0), taskReady(nTasks, 0.0), assignedEnergy(nPes, 0.0) {}

  double startTime(TaskId task, std::size_t instance) const {
    return std::max(peAvail.at(instance), taskReady.at(task));
  }
};

struct Placement {
  std::size_t instanceId = 0;
  double start = 0.0;
  double finish = 0.0;
};

struct Schedule {
  std::vector<Placement> placements; ///< indexed by task id
  std::vector<double> energyByPe;    ///< joules per instance
  double makespan = 0.0;
  bool meetsDeadline = false;
  /// Total energy divided by makespan.
  double totalAvgPower = 0.0;

  /// energy / makespan per instance id.
  std::map<std::size_t, double> averagePowers() const;
};

/// h1/h2/h3 power term for placing task on pe. Requires a power mode.
double pow_term(const Mode &mode, const Task &task, const PeInstance &pe,
                const TechLibrary &lib, const SchedulerState &state);

/// Avg_Temp inquiry: per-PE power = (energy so far, plus the candidate's
/// energy on pe) / max(makespanSoFar, candidate finish, eps), solved on the
/// model. Returns the mean block temperature.
double temp_term(const Task &task, const PeInstance &pe, const TechLibrary &lib,
                 const SchedulerState &state, const ThermalModel &model,
                 const ThermalConfig &tcfg);

/// Convenience overload that builds the model from a floorplan.
double temp_term(const Task &task, const PeInstance &pe, const TechLibrary &lib,
                 const SchedulerState &state, const Floorplan &fp,
                 const ThermalConfig &tcfg);

/// DC = SC - WCET - max(avail, ready) - termWeight * termScale * term.
double compute_dc(const Task &task, const PeInstance &pe, const TechLibrary &lib,
                  const SchedulerState &state, const CriticalityMap &sc,
                  double term, double termScale, double termWeight);

/// Affine map of the candidate set's term values onto [0, R], R being the
/// spread of the candidates' time parts (1 tick when they are all equal).
struct TermNormalization {
  double offset = 0.0; ///< subtracted from each raw term
  double scale = 0.0;  ///< termScale passed to compute_dc
};
TermNormalization normalize_terms(const std::vector<double> &terms,
                                  const std::vector<double> &timeParts);

/// Criticality-driven list scheduler. Each step evaluates every (ready task,
/// PE instance) pair and places the one with maximum DC; ties go to the lower
/// task id, then the lower instance id. Thermal mode needs fp.
Schedule schedule(const TaskGraph &g, const Architecture &arch,
                  const TechLibrary &lib, const Mode &mode,
                  const Floorplan *fp = nullptr, const ThermalConfig &tcfg = {});

/// Precedence, per-PE overlap, duration and deadline-verdict violations.
std::vector<std::string> schedule_violations(const TaskGraph &g,
                                             const Architecture &arch,
                                             const TechLibrary &lib,
                                             const Schedule &s);

/// Steady-state temperatures of the final per-PE average powers.
TemperatureMap schedule_temperatures(const Schedule &s, const Floorplan &fp,
                                     const ThermalConfig &tcfg);

} // namespace thermsched

#include "thermsched/scheduler.hpp"

#include "thermsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace thermsched {

std::string_view to_string(ModeKind kind) {
  switch (kind) {
  case ModeKind::baseline:
    return "baseline";
  case ModeKind::h1:
    return "h1";
  case ModeKind::h2:
    return "h2";
  case ModeKind::h3:
    return "h3";
  case ModeKind::thermal:
    return "thermal";
  }
  return "?";
}

ModeKind parse_mode(std::string_view name) {
  for (ModeKind k : kAllModes) {
    if (to_string(k) == name) {
      return k;
    }
  }
  throw FormatError("unknown scheduling mode '" + std::string(name) + "'");
}

std::map<std::size_t, double> Schedule::averagePowers() const {
  std::map<std::size_t, double> out;
  for (std::size_t i = 0; i < energyByPe.size(); ++i) {
    out[i] = makespan > 0.0 ? energyByPe[i] / makespan : 0.0;
  }
  return out;
}

double pow_term(const Mode &mode, const Task &task, const PeInstance &pe,
                const TechLibrary &lib, const SchedulerState &state) {
  const double wcpc = lib.wcpc(task.typeRow, pe.peTypeId);
  const double wcet = lib.wcet(task.typeRow, pe.peTypeId);
  switch (mode.kind) {
  case ModeKind::h1:
    return wcpc;
  case ModeKind::h2: {
    const double finish = state.startTime(task.id, pe.instanceId) + wcet;
    return (state.assignedEnergy.at(pe.instanceId) + wcpc * wcet) /
           std::max(finish, kTimeEpsilon);
  }
  case ModeKind::h3:
    return wcpc * wcet;
  default:
    throw FormatError("pow_term needs a power mode (h1, h2 or h3)");
  }
}

namespace {

std::vector<double> inquiry_powers(const Task &task, const PeInstance &pe,
                                   const TechLibrary &lib,
                                   const SchedulerState &state,
                                   const ThermalModel &model) {
  const double finish =
      state.startTime(task.id, pe.instanceId) + lib.wcet(task.typeRow, pe.peTypeId);
  const double horizon =
      std::max({state.makespanSoFar, finish, kTimeEpsilon});
  std::vector<double> p(model.size(), 0.0);
  for (std::size_t i = 0; i < model.size(); ++i) {
    const std::size_t id = model.blockOrder()[i];
    double energy =
        id < state.assignedEnergy.size() ? state.assignedEnergy[id] : 0.0;
    if (id == pe.instanceId) {
      energy += lib.energy(task.typeRow, pe.peTypeId);
    }
    p[i] = energy / horizon;
  }
  return p;
}

} // namespace

double temp_term(const Task &task, const PeInstance &pe, const TechLibrary &lib,
                 const SchedulerState &state, const ThermalModel &model,
                 const ThermalConfig &tcfg) {
  model.indexOf(pe.instanceId);
  const auto p = inquiry_powers(task, pe, lib, state, model);
  return solve_steady_state(model, std::span<const double>(p), tcfg).avgTemp;
}

double temp_term(const Task &task, const PeInstance &pe, const TechLibrary &lib,
                 const SchedulerState &state, const Floorplan &fp,
                 const ThermalConfig &tcfg) {
  return temp_term(task, pe, lib, state, build_model(fp, tcfg), tcfg);
}

double compute_dc(const Task &task, const PeInstance &pe, const TechLibrary &lib,
                  const SchedulerState &state, const CriticalityMap &sc,
                  double term, double termScale, double termWeight) {
  return sc[task.id] - lib.wcet(task.typeRow, pe.peTypeId) -
         state.startTime(task.id, pe.instanceId) -
         termWeight * termScale * term;
}

TermNormalization normalize_terms(const std::vector<double> &terms,
                                  const std::vector<double> &timeParts) {
  if (terms.empty()) {
    return {};
  }
  const auto [vmin, vmax] = std::minmax_element(terms.begin(), terms.end());
  if (*vmax == *vmin) {
    return {*vmin, 0.0};
  }
  const auto [tmin, tmax] =
      std::minmax_element(timeParts.begin(), timeParts.end());
  double range = *tmax - *tmin;
  if (!(range > 0.0)) {
    range = 1.0;
  }
  return {*vmin, range / (*vmax - *vmin)};
}

Schedule schedule(const TaskGraph &g, const Architecture &arch,
                  const TechLibrary &lib, const Mode &mode, const Floorplan *fp,
                  const ThermalConfig &tcfg) {
  if (arch.empty()) {
    throw FormatError("cannot schedule on an empty architecture");
  }
  arch.validate(lib);
  for (const auto &t : g.tasks()) {
    if (t.typeRow >= lib.rows()) {
      throw RefError("task " + g.name(t.id) + " has no library row");
    }
  }
  if (!(mode.termWeight >= 0.0)) {
    throw FormatError("term weight must be non-negative");
  }

  const bool useTerm = mode.kind != ModeKind::baseline && mode.termWeight != 0.0;
  std::optional<ThermalModel> model;
  if (mode.kind == ModeKind::thermal) {
    if (fp == nullptr) {
      throw FormatError("thermal mode needs a floorplan");
    }
    model = build_model(*fp, tcfg);
    for (const auto &pe : arch.instances()) {
      model->indexOf(pe.instanceId);
    }
  }

  const CriticalityMap sc = static_criticality(g, lib);
  const std::size_t n = g.size();
  SchedulerState state(n, arch.size());
  std::vector<std::size_t> pendingPreds(n);
  std::vector<bool> done(n, false);
  for (TaskId t = 0; t < n; ++t) {
    pendingPreds[t] = g.predecessors(t).size();
  }

  Schedule out;
  out.placements.resize(n);

  struct Candidate {
    TaskId task;
    std::size_t pe;
    double timePart;
    double term;
  };
  std::vector<Candidate> cands;
  std::vector<double> terms;
  std::vector<double> timeParts;

  for (std::size_t step = 0; step < n; ++step) {
    cands.clear();
    for (TaskId t = 0; t < n; ++t) {
      if (done[t] || pendingPreds[t] != 0) {
        continue;
      }
      for (const auto &pe : arch.instances()) {
        const Task &task = g.task(t);
        const double timePart = sc[t] - lib.wcet(task.typeRow, pe.peTypeId) -
                                state.startTime(t, pe.instanceId);
        cands.push_back({t, pe.instanceId, timePart, 0.0});
      }
    }

    if (useTerm) {
      std::map<std::vector<double>, double> inquiryCache;
      for (auto &c : cands) {
        const Task &task = g.task(c.task);
        const PeInstance &pe = arch[c.pe];
        if (mode.kind == ModeKind::thermal) {
          auto p = inquiry_powers(task, pe, lib, state, *model);
          auto hit = inquiryCache.find(p);
          if (hit == inquiryCache.end()) {
            const double avg =
                solve_steady_state(*model, std::span<const double>(p), tcfg)
                    .avgTemp;
            hit = inquiryCache.emplace(std::move(p), avg).first;
          }
          c.term = hit->second;
        } else {
          c.term = pow_term(mode, task, pe, lib, state);
        }
      }
    }

    TermNormalization norm{0.0, 0.0};
    if (useTerm) {
      if (mode.rawTerm) {
        norm = {0.0, 1.0};
      } else {
        terms.clear();
        timeParts.clear();
        for (const auto &c : cands) {
          terms.push_back(c.term);
          timeParts.push_back(c.timePart);
        }
        norm = normalize_terms(terms, timeParts);
      }
    }

    const Candidate *best = nullptr;
    double bestDc = -std::numeric_limits<double>::infinity();
    for (const auto &c : cands) {
      // candidates are generated in (task, instance) order, so keeping the
      // first maximum implements the tie-break
      const double dc =
          compute_dc(g.task(c.task), arch[c.pe], lib, state, sc,
                     c.term - norm.offset, norm.scale, mode.termWeight);
      if (best == nullptr || dc > bestDc) {
        best = &c;
        bestDc = dc;
      }
    }

    const Task &task = g.task(best->task);
    const PeInstance &pe = arch[best->pe];
    const double start = state.startTime(task.id, pe.instanceId);
    const double finish = start + lib.wcet(task.typeRow, pe.peTypeId);
    out.placements[task.id] = {pe.instanceId, start, finish};
    state.peAvail[pe.instanceId] = finish;
    state.assignedEnergy[pe.instanceId] += lib.energy(task.typeRow, pe.peTypeId);
    state.makespanSoFar = std::max(state.makespanSoFar, finish);
    done[task.id] = true;
    for (TaskId s : g.successors(task.id)) {
      state.taskReady[s] = std::max(state.taskReady[s], finish);
      --pendingPreds[s];
    }
  }

  out.energyByPe = state.assignedEnergy;
  out.makespan = state.makespanSoFar;
  out.meetsDeadline = out.makespan <= g.deadline();
  double energy = 0.0;
  for (double e : out.energyByPe) {
    energy += e;
  }
  out.totalAvgPower = energy / out.makespan;
  return out;
}

std::vector<std::string> schedule_violations(const TaskGraph &g,
                                             const Architecture &arch,
                                             const TechLibrary &lib,
                                             const Schedule &s) {
  std::vector<std::string> out;
  if (s.placements.size() != g.size()) {
    out.push_back("schedule does not place every task exactly once");
    return out;
  }
  double makespan = 0.0;
  std::vector<std::vector<Placement>> perPe(arch.size());
  for (TaskId t = 0; t < g.size(); ++t) {
    const auto &p = s.placements[t];
    if (p.instanceId >= arch.size()) {
      out.push_back("task " + g.name(t) + " placed on unknown PE");
      continue;
    }
    const double wcet = lib.wcet(g.task(t).typeRow, arch[p.instanceId].peTypeId);
    if (std::abs(p.finish - (p.start + wcet)) > 1e-9 * std::max(1.0, p.finish)) {
      out.push_back("task " + g.name(t) + " finish != start + WCET");
    }
    if (p.start < 0.0) {
      out.push_back("task " + g.name(t) + " starts before time 0");
    }
    perPe[p.instanceId].push_back(p);
    makespan = std::max(makespan, p.finish);
  }
  for (const auto &[pred, succ] : g.edges()) {
    if (s.placements[succ].start < s.placements[pred].finish) {
      out.push_back("task " + g.name(succ) + " starts before predecessor " +
                    g.name(pred) + " finishes");
    }
  }
  for (std::size_t pe = 0; pe < perPe.size(); ++pe) {
    auto &list = perPe[pe];
    std::sort(list.begin(), list.end(),
              [](const Placement &a, const Placement &b) {
                return a.start < b.start;
              });
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].start < list[i - 1].finish) {
        out.push_back("overlapping placements on PE " + std::to_string(pe));
      }
    }
  }
  if (s.makespan != makespan) {
    out.push_back("makespan differs from the latest finish");
  }
  if (s.meetsDeadline != (s.makespan <= g.deadline())) {
    out.push_back("deadline verdict is inconsistent");
  }
  return out;
}

TemperatureMap schedule_temperatures(const Schedule &s, const Floorplan &fp,
                                     const ThermalConfig &tcfg) {
  const auto model = build_model(fp, tcfg);
  auto powers = s.averagePowers();
  for (std::size_t id : model.blockOrder()) {
    powers.try_emplace(id, 0.0);
  }
  return solve_steady_state(model, powers, tcfg);
}

} // namespace thermsched

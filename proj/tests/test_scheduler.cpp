#include "support/oracles.hpp"

#include "thermsched/errors.hpp"
#include "thermsched/floorplan.hpp"
#include "thermsched/scheduler.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <set>

using namespace thermsched;

namespace {

TechLibrary single_entry(double wcet, double wcpc, std::size_t types = 1) {
  std::vector<PEType> t;
  for (std::size_t i = 0; i < types; ++i) {
    t.push_back({i, 8e-3, 8e-3});
  }
  return TechLibrary(t, {std::vector<double>(types, wcet)},
                     {std::vector<double>(types, wcpc)});
}

TaskGraph chain3(double deadline) {
  return TaskGraph({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}}, deadline);
}

Floorplan two_halves() {
  Floorplan fp;
  fp.blocks[0] = {0, 0, 8e-3, 16e-3};
  fp.blocks[1] = {8e-3, 0, 8e-3, 16e-3};
  fp.chipWidth = fp.chipHeight = 16e-3;
  return fp;
}

// Exact textual image of a schedule (hex floats, no rounding).
std::string dump(const Schedule &s) {
  std::string out;
  char buf[64];
  for (const auto &p : s.placements) {
    std::snprintf(buf, sizeof buf, "%zu:%a:%a;", p.instanceId, p.start, p.finish);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "|%a|%d|%a", s.makespan, s.meetsDeadline ? 1 : 0,
                s.totalAvgPower);
  return out + buf;
}

} // namespace

TEST(ModeNames, RoundTrip) {
  for (auto k : kAllModes) {
    EXPECT_EQ(parse_mode(to_string(k)), k);
  }
  EXPECT_THROW(parse_mode("h4"), FormatError);
}

TEST(PowTerm, HeuristicExamples) {
  SchedulerState st(1, 1);
  const PeInstance pe{0, 0};
  const Task task{0, 0};
  EXPECT_DOUBLE_EQ(pow_term({ModeKind::h1}, task, pe, single_entry(10, 2.5), st), 2.5);
  EXPECT_DOUBLE_EQ(pow_term({ModeKind::h3}, task, pe, single_entry(10, 2.0), st), 20.0);
  st.assignedEnergy[0] = 100;
  st.peAvail[0] = 50;
  EXPECT_DOUBLE_EQ(pow_term({ModeKind::h2}, task, pe, single_entry(10, 2.0), st), 2.0);
}

TEST(ComputeDc, BaselineSubstitution) {
  SchedulerState st(1, 1);
  st.peAvail[0] = 5;
  st.taskReady[0] = 7;
  CriticalityMap sc{{100}};
  EXPECT_DOUBLE_EQ(compute_dc({0, 0}, {0, 0}, single_entry(10, 1), st, sc, 0, 0, 1), 83.0);
  EXPECT_DOUBLE_EQ(compute_dc({0, 0}, {0, 0}, single_entry(10, 1), st, sc, 3, 2, 0.5), 80.0);
}

TEST(NormalizeTerms, IdenticalTermsContributeNothing) {
  auto n = normalize_terms({4.0, 4.0, 4.0}, {1.0, 7.0, 3.0});
  EXPECT_EQ((4.0 - n.offset) * n.scale, 0.0);
}

TEST(NormalizeTerms, MapsOntoTimeSpread) {
  auto n = normalize_terms({20.0, 40.0, 30.0}, {10.0, 16.0, 12.0});
  EXPECT_DOUBLE_EQ((20.0 - n.offset) * n.scale, 0.0);
  EXPECT_DOUBLE_EQ((40.0 - n.offset) * n.scale, 6.0);
  EXPECT_DOUBLE_EQ((30.0 - n.offset) * n.scale, 3.0);
}

TEST(NormalizeTerms, LowerEnergyWinsOnEqualTimeParts) {
  // two candidates, equal time parts, h3 energies 20 J and 40 J
  auto n = normalize_terms({20.0, 40.0}, {50.0, 50.0});
  const double dc20 = 50.0 - (20.0 - n.offset) * n.scale;
  const double dc40 = 50.0 - (40.0 - n.offset) * n.scale;
  EXPECT_GT(dc20, dc40);
}

TEST(NormalizeTerms, ArgmaxInvariantUnderAffineRescale) {
  Rng rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto m = static_cast<std::size_t>(rng.between(1, 12));
    std::vector<double> terms(m), time(m);
    for (std::size_t i = 0; i < m; ++i) {
      terms[i] = static_cast<double>(rng.between(0, 20));
      time[i] = static_cast<double>(rng.between(-50, 50));
    }
    const double a = static_cast<double>(rng.between(1, 1000)) / 8.0;
    const double b = static_cast<double>(rng.between(-100, 100));
    std::vector<double> scaled(m);
    for (std::size_t i = 0; i < m; ++i) {
      scaled[i] = a * terms[i] + b;
    }
    auto pick = [&](const std::vector<double> &t) {
      auto n = normalize_terms(t, time);
      std::size_t best = 0;
      double bestDc = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double dc = time[i] - (t[i] - n.offset) * n.scale;
        if (i == 0 || dc > bestDc + 1e-9) {
          best = i;
          bestDc = dc;
        }
      }
      return best;
    };
    EXPECT_EQ(pick(terms), pick(scaled));
  }
}

TEST(TempTerm, EmptyStateZeroPowerIsAmbient) {
  SchedulerState st(1, 2);
  TechLibrary lib({{0, 8e-3, 16e-3}}, {{10.0}}, {{1.0}});
  // zero-energy candidates are impossible, so probe with an unused PE's view
  ThermalModel m = build_model(two_halves(), {});
  auto t = solve_steady_state(m, std::vector<double>{0.0, 0.0}, {});
  EXPECT_EQ(t.avgTemp, 45.0);
  EXPECT_GT(temp_term({0, 0}, {0, 0}, lib, st, two_halves(), {}), 45.0);
}

TEST(TempTerm, TwoBlockOracle) {
  SchedulerState st(1, 2);
  auto lib = single_entry(10.0, 10.0);
  const double got = temp_term({0, 0}, {0, 0}, lib, st, two_halves(), {});
  auto ref = oracle::temperatures(two_halves(), {}, {{0, 10.0}, {1, 0.0}});
  EXPECT_NEAR(got, (ref[0] + ref[1]) / 2, 1e-10);
  EXPECT_NEAR(got, 58.67, 5e-3);
}

TEST(TempTerm, FunctionOfPowerVectorOnly) {
  SchedulerState st(2, 2);
  std::vector<PEType> t{{0, 8e-3, 16e-3}};
  // rows differ in WCET and WCPC but share energy 40 J and finish <= horizon
  TechLibrary lib(t, {{10.0}, {20.0}}, {{4.0}, {2.0}});
  st.makespanSoFar = 50;
  st.assignedEnergy = {30, 12};
  const double a = temp_term({0, 0}, {1, 0}, lib, st, two_halves(), {});
  const double b = temp_term({1, 1}, {1, 0}, lib, st, two_halves(), {});
  EXPECT_EQ(a, b);
}

TEST(Schedule, SingleTask) {
  TaskGraph g({{0, 0}}, {}, 100);
  auto s = schedule(g, platform_architecture(1, 0), single_entry(10, 1), {});
  EXPECT_EQ(s.placements[0].instanceId, 0u);
  EXPECT_EQ(s.placements[0].start, 0.0);
  EXPECT_EQ(s.placements[0].finish, 10.0);
  EXPECT_EQ(s.makespan, 10.0);
  EXPECT_TRUE(s.meetsDeadline);
  EXPECT_DOUBLE_EQ(s.totalAvgPower, 1.0);
}

TEST(Schedule, ChainSerialOnTieBreakPe) {
  auto s = schedule(chain3(100), platform_architecture(2, 0), single_entry(10, 1), {});
  EXPECT_EQ(s.makespan, 30.0);
  for (std::size_t t = 0; t < 3; ++t) {
    EXPECT_EQ(s.placements[t].instanceId, 0u);
    EXPECT_EQ(s.placements[t].start, 10.0 * static_cast<double>(t));
  }
  EXPECT_TRUE(s.meetsDeadline);
}

TEST(Schedule, MissedDeadlineIsVerdict) {
  auto s = schedule(chain3(5), platform_architecture(2, 0), single_entry(10, 1), {});
  EXPECT_EQ(s.makespan, 30.0);
  EXPECT_FALSE(s.meetsDeadline);
  EXPECT_TRUE(schedule_violations(chain3(5), platform_architecture(2, 0),
                                  single_entry(10, 1), s)
                  .empty());
}

TEST(Schedule, ThermalModeNeedsFloorplan) {
  EXPECT_THROW(schedule(chain3(5), platform_architecture(2, 0), single_entry(10, 1),
                        {ModeKind::thermal}),
               FormatError);
}

TEST(Schedule, ViolationCheckerCatchesTampering) {
  auto g = chain3(100);
  auto arch = platform_architecture(2, 0);
  auto lib = single_entry(10, 1);
  auto s = schedule(g, arch, lib, {});
  auto bad = s;
  bad.placements[1].start = 5;
  bad.placements[1].finish = 15;
  EXPECT_FALSE(schedule_violations(g, arch, lib, bad).empty());
  bad = s;
  bad.placements[2].finish = 31;
  EXPECT_FALSE(schedule_violations(g, arch, lib, bad).empty());
  bad = s;
  bad.meetsDeadline = false;
  EXPECT_FALSE(schedule_violations(g, arch, lib, bad).empty());
}

TEST(ScheduleProperties, ValidInEveryMode) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    auto inst = oracle::random_instance(seed);
    auto fp = grid_floorplan(inst.arch, inst.lib);
    for (auto kind : kAllModes) {
      auto s = schedule(inst.graph, inst.arch, inst.lib, {kind}, &fp);
      auto v = schedule_violations(inst.graph, inst.arch, inst.lib, s);
      EXPECT_TRUE(v.empty()) << "seed " << seed << " " << to_string(kind) << ": "
                             << (v.empty() ? "" : v.front());
    }
  }
}

TEST(ScheduleProperties, Deterministic) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = oracle::random_instance(seed);
    auto fp = grid_floorplan(inst.arch, inst.lib);
    for (auto kind : kAllModes) {
      EXPECT_EQ(dump(schedule(inst.graph, inst.arch, inst.lib, {kind}, &fp)),
                dump(schedule(inst.graph, inst.arch, inst.lib, {kind}, &fp)));
    }
  }
}

TEST(ScheduleProperties, ZeroWeightIsBaseline) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto inst = oracle::random_instance(seed);
    auto fp = grid_floorplan(inst.arch, inst.lib);
    const auto base = dump(schedule(inst.graph, inst.arch, inst.lib, {}));
    for (auto kind : kAllModes) {
      for (bool raw : {false, true}) {
        EXPECT_EQ(dump(schedule(inst.graph, inst.arch, inst.lib, {kind, 0.0, raw}, &fp)),
                  base);
      }
    }
  }
}

TEST(ScheduleProperties, EnergyAndPowerBookkeeping) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto inst = oracle::random_instance(seed);
    auto s = schedule(inst.graph, inst.arch, inst.lib, {ModeKind::h2});
    std::vector<double> energy(inst.arch.size(), 0.0);
    for (const auto &t : inst.graph.tasks()) {
      const auto &p = s.placements[t.id];
      energy[p.instanceId] +=
          inst.lib.energy(t.typeRow, inst.arch[p.instanceId].peTypeId);
    }
    double total = 0;
    for (std::size_t j = 0; j < energy.size(); ++j) {
      EXPECT_NEAR(s.energyByPe[j], energy[j], 1e-9);
      total += energy[j];
    }
    EXPECT_NEAR(s.totalAvgPower, total / s.makespan, 1e-9);
  }
}

TEST(ScheduleProperties, ThermalModeUsesEveryIdenticalPe) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Rng rng(seed);
    const auto pes = static_cast<std::size_t>(rng.between(2, 4));
    const auto n = pes + rng.below(6);
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < n; ++i) {
      tasks.push_back({i, i});
    }
    TaskGraph g(tasks, {}, 1e6);
    auto lib = generate_random_library(n, 1, true, seed);
    auto arch = platform_architecture(pes, 0);
    auto fp = grid_floorplan(arch, lib);
    auto s = schedule(g, arch, lib, {ModeKind::thermal}, &fp);
    std::set<std::size_t> used;
    for (const auto &p : s.placements) {
      used.insert(p.instanceId);
    }
    EXPECT_EQ(used.size(), pes) << "seed " << seed;
  }
}

TEST(ScheduleTemperatures, FinalPowersSolved) {
  auto fp = two_halves();
  auto arch = platform_architecture(2, 0);
  TaskGraph g({{0, 0}, {1, 0}}, {}, 100);
  TechLibrary lib({{0, 8e-3, 16e-3}}, {{10.0}}, {{3.0}});
  auto s = schedule(g, arch, lib, {}, &fp);
  auto t = schedule_temperatures(s, fp, {});
  auto ref = oracle::temperatures(fp, {}, s.averagePowers());
  EXPECT_NEAR(t.tempByBlock.at(0), ref[0], 1e-10);
  EXPECT_NEAR(t.tempByBlock.at(1), ref[1], 1e-10);
}

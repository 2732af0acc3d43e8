#include "thermsched/cosynth.hpp"
#include "thermsched/errors.hpp"
#include "thermsched/floorplan.hpp"
#include "thermsched/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>

using namespace thermsched;
namespace fs = std::filesystem;

TEST(GraphFile, RoundTrip) {
  auto g = generate_random_graph(12, 15, 300, 2);
  auto back = parse_task_graph(to_json(g).dump());
  EXPECT_EQ(back.size(), g.size());
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_EQ(back.deadline(), g.deadline());
}

TEST(FloorplanFile, RoundTripInMillimetres) {
  auto fp = grid_floorplan(platform_architecture(3, 0),
                           generate_random_library(1, 1, true, 1));
  auto doc = to_json(fp);
  EXPECT_DOUBLE_EQ(doc["chip"]["w_mm"].get<double>(), 16.0);
  auto back = parse_floorplan(doc.dump());
  ASSERT_EQ(back.blocks.size(), 3u);
  for (const auto &[id, r] : fp.blocks) {
    EXPECT_NEAR(back.blocks.at(id).x, r.x, 1e-15);
    EXPECT_NEAR(back.blocks.at(id).width, r.width, 1e-15);
  }
  EXPECT_THROW(parse_floorplan(R"({"chip":{"w_mm":1,"h_mm":1},"blocks":[
      {"instanceId":0,"x_mm":0,"y_mm":0,"w_mm":2,"h_mm":1}]})"),
               GeometryError);
  EXPECT_THROW(parse_floorplan(R"({"blocks":[]})"), FormatError);
}

TEST(PowerFile, ParsesStringKeys) {
  auto p = parse_powers(R"({"0": 1.5, "2": 0})");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.at(0), 1.5);
  EXPECT_EQ(parse_powers(powers_to_json(p).dump()), p);
  EXPECT_THROW(parse_powers(R"({"a": 1})"), FormatError);
  EXPECT_THROW(parse_powers(R"([1,2])"), FormatError);
}

TEST(ThermalConfigFile, DefaultsAndOverrides) {
  auto c = parse_thermal_config(R"({"ambient": 30})");
  EXPECT_EQ(c.ambient, 30.0);
  EXPECT_EQ(c.kSilicon, 100.0);
  EXPECT_THROW(parse_thermal_config(R"({"kSilicon": -1})"), FormatError);
}

TEST(TemperatureJson, Shape) {
  TemperatureMap t;
  t.tempByBlock = {{0, 50.0}, {1, 48.0}};
  t.maxTemp = 50;
  t.avgTemp = 49;
  auto doc = to_json(t);
  EXPECT_EQ(doc["temps"]["1"].get<double>(), 48.0);
  EXPECT_EQ(doc["max"].get<double>(), 50.0);
  EXPECT_EQ(doc["avg"].get<double>(), 49.0);
}

TEST(ScheduleJson, Fields) {
  auto g = generate_random_graph(5, 4, 1000, 3);
  auto lib = generate_random_library(5, 1, true, 3);
  auto r = platform_flow(g, lib, 2, {});
  auto doc = to_json(r.sched, g, r.temps);
  EXPECT_EQ(doc["placements"].size(), 5u);
  EXPECT_EQ(doc["makespan"].get<double>(), r.sched.makespan);
  EXPECT_TRUE(doc.contains("totalAvgPower"));
  EXPECT_TRUE(doc.contains("meetsDeadline"));
  EXPECT_TRUE(doc.contains("maxTemp"));
  auto bundle = to_json(r, g);
  for (const char *key : {"arch", "floorplan", "schedule", "temps", "feasible"}) {
    EXPECT_TRUE(bundle.contains(key)) << key;
  }
}

// --- command line ---------------------------------------------------------

namespace {

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("thermsched_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string &args) {
    const std::string cmd = std::string(THERMSCHED_CLI) + " " + args + " 2>" +
                            (dir_ / "stderr.txt").string() + " >" +
                            (dir_ / "stdout.txt").string();
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }
  std::string file(const std::string &name) const { return (dir_ / name).string(); }
  std::string stdout_text() const { return read_file(file("stdout.txt")); }

  fs::path dir_;
};

} // namespace

TEST_F(Cli, GenerateScheduleAndThermal) {
  ASSERT_EQ(run("gen-graph --tasks 19 --edges 19 --deadline 790 --seed 1 -o " + file("g.json")), 0);
  ASSERT_EQ(run("gen-lib --tasks 19 --pe-types 4 --seed 1 -o " + file("lib.json")), 0);
  auto g = parse_task_graph(read_file(file("g.json")));
  EXPECT_EQ(g.edges().size(), 19u);

  ASSERT_EQ(run("schedule --graph " + file("g.json") + " --lib " + file("lib.json") +
                " --arch platform4 --mode thermal -o " + file("s.json")),
            0);
  auto s = Json::parse(read_file(file("s.json")));
  EXPECT_EQ(s["placements"].size(), 19u);
  EXPECT_TRUE(s.contains("maxTemp"));

  write_file(file("arch.json"), to_json(Architecture::fromTypes({0, 1})).dump());
  write_file(file("p.json"), R"({"0": 3, "1": 1})");
  ASSERT_EQ(run("floorplan --arch " + file("arch.json") + " --lib " + file("lib.json") +
                " --powers " + file("p.json") + " --seed 3 --generations 10 -o " +
                file("fp.json")),
            0);
  ASSERT_EQ(run("thermal --floorplan " + file("fp.json") + " --powers " + file("p.json")), 0);
  auto t = Json::parse(stdout_text());
  EXPECT_GT(t["max"].get<double>(), 45.0);
  EXPECT_GE(t["max"].get<double>(), t["avg"].get<double>());
}

TEST_F(Cli, FlowsAndBench) {
  ASSERT_EQ(run("gen-graph --tasks 8 --edges 9 --deadline 300 --seed 2 -o " + file("g.json")), 0);
  ASSERT_EQ(run("gen-lib --tasks 8 --pe-types 3 --seed 2 -o " + file("lib.json")), 0);
  ASSERT_EQ(run("cosynth --graph " + file("g.json") + " --lib " + file("lib.json") +
                " --mode h3 --max-pes 3 --seed 2"),
            0);
  EXPECT_TRUE(Json::parse(stdout_text()).contains("feasible"));
  ASSERT_EQ(run("platform --graph " + file("g.json") + " --lib " + file("lib.json") +
                " --pes 4 --mode thermal"),
            0);
  EXPECT_EQ(Json::parse(stdout_text())["arch"].size(), 4u);

  ASSERT_EQ(run("bench --profiles Bm1 --modes h1,thermal --flows platform --seeds 1..2 "
                "--format csv --aggregate --workers 2"),
            0);
  const auto csv = stdout_text();
  EXPECT_EQ(csv.rfind("profile,flow,mode,seed", 0), 0u);
  EXPECT_NE(csv.find("platform,meanMaxTempReduction"), std::string::npos);
  ASSERT_EQ(run("bench --profiles Bm1 --modes h1 --flows platform --seeds 1 --format md"), 0);
  EXPECT_NE(stdout_text().find("Bm1"), std::string::npos);
}

TEST_F(Cli, ErrorsExitNonZero) {
  write_file(file("cyc.json"), R"({"tasks":[{"id":"A"},{"id":"B"}],
      "edges":[["A","B"],["B","A"]],"deadline":10})");
  ASSERT_EQ(run("gen-lib --tasks 2 --pe-types 1 --seed 1 -o " + file("lib.json")), 0);
  EXPECT_EQ(run("schedule --graph " + file("cyc.json") + " --lib " + file("lib.json") +
                " --arch platform2"),
            2);
  EXPECT_NE(read_file(file("stderr.txt")).find("cycle"), std::string::npos);
  EXPECT_EQ(run("bench --profiles Bm1 --modes h9 --seeds 1"), 2);
  EXPECT_EQ(run("bench --profiles Bm1 --seeds 1 --format xml"), 2);
  EXPECT_NE(run("schedule"), 0);
}

TEST_F(Cli, ThermalConfigFromEnvironment) {
  write_file(file("fp.json"), R"({"chip":{"w_mm":16,"h_mm":16},"blocks":[
      {"instanceId":0,"x_mm":0,"y_mm":0,"w_mm":16,"h_mm":16}]})");
  write_file(file("p.json"), R"({"0": 10})");
  write_file(file("cfg.json"), R"({"ambient": 25})");
  ASSERT_EQ(run("thermal --floorplan " + file("fp.json") + " --powers " + file("p.json")), 0);
  EXPECT_NEAR(Json::parse(stdout_text())["max"].get<double>(), 58.67, 5e-3);
  ASSERT_EQ(run("thermal --floorplan " + file("fp.json") + " --powers " + file("p.json")), 0);
  ::setenv("THERMSCHED_THERMAL_CFG", file("cfg.json").c_str(), 1);
  ASSERT_EQ(run("thermal --floorplan " + file("fp.json") + " --powers " + file("p.json")), 0);
  ::unsetenv("THERMSCHED_THERMAL_CFG");
  EXPECT_NEAR(Json::parse(stdout_text())["max"].get<double>(), 38.67, 5e-3);
}

#include "thermsched/io.hpp"

#include "thermsched/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace thermsched {

namespace {

constexpr double kMm = 1e-3;

Json parse_json(std::string_view document, const char *what) {
  try {
    return Json::parse(document);
  } catch (const Json::parse_error &e) {
    throw FormatError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

template <typename T> T field(const Json &obj, const char *key, const char *what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(std::string(what) + " lacks '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception &) {
    throw FormatError(std::string(what) + " has a wrongly typed '" + key + "'");
  }
}

std::vector<std::vector<double>> matrix(const Json &doc, const char *key) {
  auto m = field<std::vector<std::vector<double>>>(doc, key, "library");
  return m;
}

} // namespace

Json to_json(const TaskGraph &g) {
  Json tasks = Json::array();
  for (const auto &t : g.tasks()) {
    Json entry{{"id", g.name(t.id)}};
    if (t.typeRow != t.id) {
      entry["typeRow"] = t.typeRow;
    }
    tasks.push_back(entry);
  }
  Json edges = Json::array();
  for (const auto &[p, s] : g.edges()) {
    edges.push_back(Json::array({g.name(p), g.name(s)}));
  }
  return Json{{"tasks", tasks}, {"edges", edges}, {"deadline", g.deadline()}};
}

TechLibrary parse_library(std::string_view document) {
  const Json doc = parse_json(document, "library");
  if (!doc.is_object() || !doc.contains("peTypes") || !doc["peTypes"].is_array()) {
    throw FormatError("library lacks a 'peTypes' list");
  }
  std::vector<PEType> types;
  for (const auto &t : doc["peTypes"]) {
    types.push_back({field<std::size_t>(t, "typeId", "PE type"),
                     field<double>(t, "width_mm", "PE type") * kMm,
                     field<double>(t, "height_mm", "PE type") * kMm});
  }
  return TechLibrary(std::move(types), matrix(doc, "wcet"), matrix(doc, "wcpc"));
}

Json to_json(const TechLibrary &lib) {
  Json types = Json::array();
  for (const auto &t : lib.peTypes()) {
    types.push_back({{"typeId", t.typeId},
                     {"width_mm", t.width / kMm},
                     {"height_mm", t.height / kMm}});
  }
  return Json{{"peTypes", types},
              {"wcet", lib.wcetTable()},
              {"wcpc", lib.wcpcTable()}};
}

Architecture parse_architecture(std::string_view document) {
  const Json doc = parse_json(document, "architecture");
  if (!doc.is_array()) {
    throw FormatError("architecture must be a list of PE instances");
  }
  std::vector<PeInstance> inst;
  for (const auto &e : doc) {
    inst.push_back({field<std::size_t>(e, "instanceId", "PE instance"),
                    field<std::size_t>(e, "peTypeId", "PE instance")});
  }
  std::sort(inst.begin(), inst.end(), [](const auto &a, const auto &b) {
    return a.instanceId < b.instanceId;
  });
  return Architecture(std::move(inst));
}

Json to_json(const Architecture &arch) {
  Json out = Json::array();
  for (const auto &pe : arch.instances()) {
    out.push_back({{"instanceId", pe.instanceId}, {"peTypeId", pe.peTypeId}});
  }
  return out;
}

Floorplan parse_floorplan(std::string_view document) {
  const Json doc = parse_json(document, "floorplan");
  Floorplan fp;
  const Json chip = field<Json>(doc, "chip", "floorplan");
  fp.chipWidth = field<double>(chip, "w_mm", "chip") * kMm;
  fp.chipHeight = field<double>(chip, "h_mm", "chip") * kMm;
  const Json blocks = field<Json>(doc, "blocks", "floorplan");
  if (!blocks.is_array()) {
    throw FormatError("floorplan 'blocks' must be a list");
  }
  for (const auto &b : blocks) {
    const auto id = field<std::size_t>(b, "instanceId", "block");
    Rect r{field<double>(b, "x_mm", "block") * kMm,
           field<double>(b, "y_mm", "block") * kMm,
           field<double>(b, "w_mm", "block") * kMm,
           field<double>(b, "h_mm", "block") * kMm};
    if (!fp.blocks.emplace(id, r).second) {
      throw FormatError("duplicate block " + std::to_string(id));
    }
  }
  validate_floorplan(fp);
  return fp;
}

Json to_json(const Floorplan &fp) {
  Json blocks = Json::array();
  for (const auto &[id, r] : fp.blocks) {
    blocks.push_back({{"instanceId", id},
                      {"x_mm", r.x / kMm},
                      {"y_mm", r.y / kMm},
                      {"w_mm", r.width / kMm},
                      {"h_mm", r.height / kMm}});
  }
  return Json{{"chip", {{"w_mm", fp.chipWidth / kMm}, {"h_mm", fp.chipHeight / kMm}}},
              {"blocks", blocks}};
}

std::map<std::size_t, double> parse_powers(std::string_view document) {
  const Json doc = parse_json(document, "power map");
  if (!doc.is_object()) {
    throw FormatError("power map must be an object of instanceId -> watts");
  }
  std::map<std::size_t, double> out;
  for (const auto &[key, value] : doc.items()) {
    std::size_t used = 0;
    std::size_t id = 0;
    try {
      id = std::stoul(key, &used);
    } catch (const std::logic_error &) {
      used = 0;
    }
    if (used != key.size() || key.empty()) {
      throw FormatError("power map key '" + key + "' is not an instance id");
    }
    if (!value.is_number()) {
      throw FormatError("power for instance " + key + " is not a number");
    }
    out[id] = value.get<double>();
  }
  return out;
}

Json powers_to_json(const std::map<std::size_t, double> &powers) {
  Json out = Json::object();
  for (const auto &[id, p] : powers) {
    out[std::to_string(id)] = p;
  }
  return out;
}

ThermalConfig parse_thermal_config(std::string_view document) {
  const Json doc = parse_json(document, "thermal config");
  if (!doc.is_object()) {
    throw FormatError("thermal config must be an object");
  }
  ThermalConfig cfg;
  auto opt = [&](const char *key, double &dst) {
    if (doc.contains(key)) {
      dst = field<double>(doc, key, "thermal config");
    }
  };
  opt("ambient", cfg.ambient);
  opt("kSilicon", cfg.kSilicon);
  opt("tSilicon", cfg.tSilicon);
  opt("rPackageUnit", cfg.rPackageUnit);
  cfg.validate();
  return cfg;
}

ThermalConfig thermal_config_from_env() {
  const char *path = std::getenv("THERMSCHED_THERMAL_CFG");
  if (path == nullptr || *path == '\0') {
    return {};
  }
  return parse_thermal_config(read_file(path));
}

Json to_json(const TemperatureMap &t) {
  Json temps = Json::object();
  for (const auto &[id, v] : t.tempByBlock) {
    temps[std::to_string(id)] = v;
  }
  return Json{{"temps", temps}, {"max", t.maxTemp}, {"avg", t.avgTemp}};
}

Json to_json(const Schedule &s, const TaskGraph &g,
             const std::optional<TemperatureMap> &temps) {
  Json placements = Json::array();
  for (TaskId t = 0; t < s.placements.size(); ++t) {
    const auto &p = s.placements[t];
    placements.push_back({{"task", g.name(t)},
                          {"instanceId", p.instanceId},
                          {"start", p.start},
                          {"finish", p.finish}});
  }
  Json out{{"placements", placements},
           {"makespan", s.makespan},
           {"meetsDeadline", s.meetsDeadline},
           {"totalAvgPower", s.totalAvgPower},
           {"energyByPe", s.energyByPe}};
  if (temps) {
    out["maxTemp"] = temps->maxTemp;
    out["avgTemp"] = temps->avgTemp;
    out["temps"] = to_json(*temps)["temps"];
  }
  return out;
}

Json to_json(const CosynthResult &r, const TaskGraph &g) {
  return Json{{"arch", to_json(r.arch)},
              {"floorplan", to_json(r.fp)},
              {"schedule", to_json(r.sched, g)},
              {"temps", to_json(r.temps)},
              {"feasible", r.feasible}};
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot read '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string &path, std::string_view content) {
  if (path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot write '" + path + "'");
  }
  out << content;
}

} // namespace thermsched

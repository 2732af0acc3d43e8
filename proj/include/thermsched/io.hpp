#pragma once

#include "thermsched/cosynth.hpp"
#include "thermsched/geometry.hpp"
#include "thermsched/scheduler.hpp"
#include "thermsched/taskgraph.hpp"
#include "thermsched/techlib.hpp"
#include "thermsched/thermal.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace thermsched {

using Json = nlohmann::json;

// All parse_* functions throw FormatError (or RefError) on bad input.
// Lengths are meters in memory and millimeters on disk.

Json to_json(const TaskGraph &g);

TechLibrary parse_library(std::string_view document);
Json to_json(const TechLibrary &lib);

/// List of {instanceId, peTypeId}.
Architecture parse_architecture(std::string_view document);
Json to_json(const Architecture &arch);

/// {chip:{w_mm,h_mm}, blocks:[{instanceId,x_mm,y_mm,w_mm,h_mm}]}
Floorplan parse_floorplan(std::string_view document);
Json to_json(const Floorplan &fp);

/// JSON object mapping instance id (as a string key) to watts.
std::map<std::size_t, double> parse_powers(std::string_view document);
Json powers_to_json(const std::map<std::size_t, double> &powers);

/// Optional keys ambient, kSilicon, tSilicon, rPackageUnit over defaults.
ThermalConfig parse_thermal_config(std::string_view document);
/// Reads THERMSCHED_THERMAL_CFG when set, defaults otherwise.
ThermalConfig thermal_config_from_env();

/// {temps:{id:C}, max, avg}
Json to_json(const TemperatureMap &t);

Json to_json(const Schedule &s, const TaskGraph &g,
             const std::optional<TemperatureMap> &temps = std::nullopt);

Json to_json(const CosynthResult &r, const TaskGraph &g);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

} // namespace thermsched

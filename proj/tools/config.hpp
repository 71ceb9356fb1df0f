#pragma once

#include "omec/filtered_output.hpp"
#include "omec/types.hpp"

#include "json.hpp"

#include <optional>
#include <set>
#include <string>

namespace omec::cli {

struct Axis {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    int points = 101;
    bool log = false;
};

// Parsed configuration. Rates are rescaled so that kappa1 = 1.
struct RunConfig {
    SystemParams params;
    FilterSpec filter;
    Axis axis;
    std::optional<std::string> out;
    nlohmann::json options = nlohmann::json::object();
    double kappa1_unit = 1.0;  // kappa1 before rescaling
};

// Overlays a JSON document on cfg. Keys outside the SystemParams fields,
// "filter", "sweep", "out" and the given command options are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& doc, const std::set<std::string>& option_keys);
void load_config_file(RunConfig& cfg, const std::string& path, const std::set<std::string>& option_keys);

// Divides every rate by kappa1 and multiplies the delays by it.
void normalize(RunConfig& cfg);

nlohmann::json params_json(const SystemParams& p);
nlohmann::json filter_json(const FilterSpec& f);

}  // namespace omec::cli

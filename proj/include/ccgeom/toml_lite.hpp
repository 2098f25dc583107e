// Minimal TOML reader covering the subset used by the config and surface
// files: [table] headers, dotted keys, strings, numbers, booleans, arrays
// (possibly nested / multiline) and inline tables. Parses into nlohmann json.
#pragma once

#include <string>

#include <json.hpp>

namespace ccgeom {

nlohmann::json parse_toml(const std::string& text);
nlohmann::json load_config_file(const std::string& path); // .toml or .json

} // namespace ccgeom

#pragma once

#include <string>

#include "json.hpp"
#include "xorcert/config.hpp"

namespace xorcert::detail {

/// Parses JSON text, mapping syntax errors to kParse.
nlohmann::json parse_json(const std::string& text, const std::string& what);

nlohmann::json to_json(const Config& cfg);
Config config_from(const nlohmann::json& j);

}  // namespace xorcert::detail

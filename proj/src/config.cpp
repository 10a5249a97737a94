#include "xorcert/config.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"
#include "json_io.hpp"
#include "xorcert/error.hpp"

namespace xorcert {

namespace {

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::kParse, "config key '" + key + "' expects a number, got '" + text + "'");
}

long long parse_int(const std::string& key, const std::string& text) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc() && ptr == text.data() + text.size(), ErrorCode::kParse,
          "config key '" + key + "' expects an integer, got '" + text + "'");
  return v;
}

}  // namespace

SpectralOptions Config::spectral() const {
  return {c_alpha, delta, norm_tol, power_max_iter, dense_cap};
}

SdpOptions Config::sdp(std::uint64_t seed) const { return {sdp_budget, seed, dense_cap}; }

void validate(const Config& c) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  require(positive(c.c_split), ErrorCode::kInvalidArgument, "c_split must be positive");
  require(positive(c.c_alpha), ErrorCode::kInvalidArgument, "c_alpha must be positive");
  require(positive(c.delta) && c.delta <= 1.0, ErrorCode::kInvalidArgument,
          "delta must lie in (0, 1]");
  require(positive(c.norm_tol), ErrorCode::kInvalidArgument, "norm_tol must be positive");
  require(c.power_max_iter >= 1, ErrorCode::kInvalidArgument, "power_max_iter must be >= 1");
  require(c.sdp_budget >= 0, ErrorCode::kInvalidArgument, "sdp_budget must be >= 0");
  require(positive(c.soundness_slack) && c.soundness_slack < 1e-3, ErrorCode::kInvalidArgument,
          "soundness_slack must lie in (0, 1e-3)");
  require(c.brute_cap >= 1 && c.brute_cap <= 30, ErrorCode::kInvalidArgument,
          "brute_cap must lie in [1, 30]");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "c_split",  "c_alpha",    "delta",           "norm_tol", "power_max_iter",
      "dense_cap", "sdp_budget", "soundness_slack", "brute_cap"};
  return keys;
}

void config_set(Config& c, const std::string& key, const std::string& value) {
  if (key == "c_split") {
    c.c_split = parse_double(key, value);
  } else if (key == "c_alpha") {
    c.c_alpha = parse_double(key, value);
  } else if (key == "delta") {
    c.delta = parse_double(key, value);
  } else if (key == "norm_tol") {
    c.norm_tol = parse_double(key, value);
  } else if (key == "power_max_iter") {
    c.power_max_iter = static_cast<int>(parse_int(key, value));
  } else if (key == "dense_cap") {
    const long long v = parse_int(key, value);
    require(v >= 0, ErrorCode::kInvalidArgument, "dense_cap must be >= 0");
    c.dense_cap = static_cast<std::size_t>(v);
  } else if (key == "sdp_budget") {
    c.sdp_budget = static_cast<int>(parse_int(key, value));
  } else if (key == "soundness_slack") {
    c.soundness_slack = parse_double(key, value);
  } else if (key == "brute_cap") {
    const long long v = parse_int(key, value);
    require(v >= 0, ErrorCode::kInvalidArgument, "brute_cap must be >= 0");
    c.brute_cap = static_cast<std::size_t>(v);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  }
}

Config config_from_json(const std::string& text) {
  return detail::config_from(detail::parse_json(text, "config"));
}

std::string config_to_json(const Config& cfg, int indent) {
  return detail::to_json(cfg).dump(indent);
}

namespace detail {

nlohmann::json to_json(const Config& c) {
  return {{"c_split", c.c_split},
          {"c_alpha", c.c_alpha},
          {"delta", c.delta},
          {"norm_tol", c.norm_tol},
          {"power_max_iter", c.power_max_iter},
          {"dense_cap", c.dense_cap},
          {"sdp_budget", c.sdp_budget},
          {"soundness_slack", c.soundness_slack},
          {"brute_cap", c.brute_cap}};
}

Config config_from(const nlohmann::json& j) {
  require(j.is_object(), ErrorCode::kParse, "config must be a JSON object");
  Config c;
  for (const auto& [key, value] : j.items()) {
    require(value.is_number(), ErrorCode::kParse, "config key '" + key + "' must be a number");
    try {
      if (key == "c_split") {
        c.c_split = value.get<double>();
      } else if (key == "c_alpha") {
        c.c_alpha = value.get<double>();
      } else if (key == "delta") {
        c.delta = value.get<double>();
      } else if (key == "norm_tol") {
        c.norm_tol = value.get<double>();
      } else if (key == "soundness_slack") {
        c.soundness_slack = value.get<double>();
      } else if (key == "power_max_iter" || key == "sdp_budget" || key == "dense_cap" ||
                 key == "brute_cap") {
        require(value.is_number_integer(), ErrorCode::kParse,
                "config key '" + key + "' must be an integer");
        config_set(c, key, std::to_string(value.get<long long>()));
      } else {
        fail(ErrorCode::kParse, "unknown config key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kParse, "config key '" + key + "': " + e.what());
    }
  }
  validate(c);
  return c;
}

}  // namespace detail

}  // namespace xorcert

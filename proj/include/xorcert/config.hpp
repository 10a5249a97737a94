#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "xorcert/sdp.hpp"
#include "xorcert/spectral_cert.hpp"

namespace xorcert {

/// Every tunable constant of the pipeline. Defaults are empirical.
struct Config {
  double c_split = 2.0;          // degree cap = ceil(c_split / eps^2)
  double c_alpha = 1.0;          // constant in alpha
  double delta = 0.01;           // Bernstein failure budget over all blocks
  double norm_tol = 1e-6;        // power iteration stopping gap
  int power_max_iter = 1000;
  std::size_t dense_cap = 2048;  // largest dimension sent to dense eigensolvers
  int sdp_budget = 2000;         // ascent sweeps in the SDP bound
  double soundness_slack = 1e-9; // relative tolerance of all re-checks
  std::size_t brute_cap = 24;    // n (+ ell) limit of the exhaustive oracle

  SpectralOptions spectral() const;
  SdpOptions sdp(std::uint64_t seed) const;
};

/// Throws kInvalidArgument when a value is out of range.
void validate(const Config& cfg);

const std::vector<std::string>& config_keys();

/// Parses a JSON object; absent keys keep their defaults, unknown keys are
/// rejected.
Config config_from_json(const std::string& text);
std::string config_to_json(const Config& cfg, int indent = 2);

/// Sets one key from its textual value.
void config_set(Config& cfg, const std::string& key, const std::string& value);

}  // namespace xorcert

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "xorcert/config.hpp"
#include "xorcert/instance.hpp"
#include "xorcert/reduce.hpp"
#include "xorcert/sdp.hpp"
#include "xorcert/spectral_cert.hpp"

namespace xorcert {

inline constexpr const char* kToolVersion = "xorcert 1.0.0";
inline constexpr const char* kCertSchema = "cert_v1";

struct ReductionInfo {
  std::string mode;  // "odd" or "even"
  std::string dictionary_digest;
};

struct DecompositionSummary {
  std::uint64_t m_light = 0;
  std::uint64_t m_heavy = 0;
  std::uint32_t d_cap = 0;
  std::uint64_t heavy_groups = 0;
};

/// How the two side bounds were joined: "light-only" when the heavy side
/// holds fewer than eps m / 2 constraints, "heavy-only" symmetrically, and
/// "both" otherwise. Bounds are satisfied-constraint counts.
struct Combination {
  std::string case_name;
  std::uint64_t m = 0;
  double light_bound = 0.0;
  double heavy_bound = 0.0;
  double combined = 0.0;  // (light_bound + heavy_bound) / m
};

struct HeavyCertificate {
  double eps = 0.0;
  CertOutcome outcome;
  std::size_t rows = 0;
  std::size_t cols = 0;
  DualCert dual;
};

struct Certificate {
  std::string schema = kCertSchema;
  std::string tool_version = kToolVersion;
  std::string instance_digest;
  std::string instance_kind;  // "kxor" or "p2xor"
  std::optional<ReductionInfo> reduction;
  double eps = 0.0;
  std::uint64_t seed = 0;
  Config config;
  CertOutcome outcome;
  Combination combination;
  DecompositionSummary decomposition;
  std::optional<LightCertificate> light;
  std::optional<HeavyCertificate> heavy;
  std::string digest;
};

/// Decomposes at eps and certifies each nonempty side at eps / 2: the light
/// side spectrally, the heavy side through the SDP bound on its bipartite
/// relaxation. A side holding at least eps m / 2 constraints must be
/// REFUTED; the result is REFUTED iff that holds and the combined value
/// bound is at most 1/2 + eps.
Certificate refute_partitioned(const PartitionedInstance& inst, double eps, const Config& cfg,
                               std::uint64_t seed = 0);

/// Reduces to partitioned 2-XOR and refutes; val of the reduction bounds
/// val of the input from above.
Certificate refute_kxor(const KXorInstance& inst, double eps, const Config& cfg,
                        std::uint64_t seed = 0);

}  // namespace xorcert

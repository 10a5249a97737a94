#pragma once

#include <cstdint>

namespace xorcert {

/// SplitMix64 step, used to expand a 64-bit seed into generator state.
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** 1.0 (Blackman & Vigna). State is filled from the seed with
/// four SplitMix64 outputs, so streams reproduce bit-for-bit across languages.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform integer in [0, bound) by rejection: draws r until
  /// r < bound * floor(2^64 / bound) and returns r % bound.
  std::uint64_t bounded(std::uint64_t bound);

  /// Uniform sign: +1 when the top bit of next() is 0, else -1.
  int sign();

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform();

  /// Standard normal via Box-Muller on two uniform() draws.
  double normal();

 private:
  std::uint64_t s_[4];
};

}  // namespace xorcert

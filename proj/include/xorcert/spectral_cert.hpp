#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "xorcert/instance.hpp"
#include "xorcert/linalg.hpp"
#include "xorcert/sdp.hpp"

namespace xorcert {

/// Key of the ordered vertex pair (v, w) in V x V.
inline std::uint64_t pair_key(std::size_t n, Vertex v, Vertex w) {
  return static_cast<std::uint64_t>(v) * n + w;
}

/// Butterfly degrees gamma(v, w) = sum_i deg_i(v) deg_i(w) / t_i. Only
/// nonzero values are stored; the sum over all ordered pairs is 4m.
struct ButterflyTable {
  std::size_t n = 0;
  std::vector<std::pair<std::uint64_t, double>> entries;  // sorted by key
  double total = 0.0;

  double gamma(Vertex v, Vertex w) const;
};

ButterflyTable butterfly(const DegreeProfile& profile);

struct WeightParams {
  double c_alpha = 1.0;
  double d = 1.0;
  double eps = 0.1;
  std::uint64_t m = 0;
  std::size_t ell = 0;
  std::size_t n = 0;
};

/// Classes S_0..S_L of ordered vertex pairs by butterfly degree:
/// S_0 = {gamma <= alpha}, S_j = {alpha beta^(j-1) < gamma <= alpha beta^j},
/// with alpha = C d^2 ell (log2 n)^6 / (eps^4 m), L = ceil(log2 n) and
/// beta = (4m / alpha)^(1/L). beta < 1 is raised to 1 and flagged; pairs
/// above the last threshold then fall into S_L.
struct WeightClassPartition {
  double alpha = 0.0;
  double beta = 1.0;
  std::uint32_t L = 1;
  bool beta_clamped = false;
  std::vector<double> thresholds;          // upper edge of class j
  std::vector<std::uint64_t> class_sizes;  // |S_j| over all n^2 pairs

  std::uint32_t class_of(double gamma) const;
};

WeightClassPartition weight_classes(const ButterflyTable& table, const WeightParams& params);

/// Nonzero part of M_{j,k}. M has rows (v, v') and columns (u, u') and
/// entries sum_i mu_i(v, u) mu_i(v', u') / sqrt(t_i) over oriented edges
/// (v < u, v' < u'). When both factors are the same edge e the entry is
/// (mu_i(e)^2 - D_i(e)) / sqrt(t_i), which removes exactly the constraint
/// self-products, so (x (x) x)^T M (x (x) x) = Phi(x) - sum_i sqrt(t_i).
struct Block {
  std::uint32_t j = 0;
  std::uint32_t k = 0;
  std::vector<std::uint64_t> row_keys;  // pair keys of the nonzero rows
  std::vector<std::uint64_t> col_keys;
  SparseMat matrix;                     // row_keys.size() x col_keys.size()
};

/// Every nonempty block, ordered by (j, k). With `part` set, only that
/// part's contribution B_{i,j,k} is built (index into profile.parts).
std::vector<Block> build_blocks(const DegreeProfile& profile, const ButterflyTable& table,
                                const WeightClassPartition& partition,
                                std::optional<std::size_t> part = std::nullopt);

/// The single block (j, k); empty when no entry falls into it.
Block build_block(const DegreeProfile& profile, const ButterflyTable& table,
                  const WeightClassPartition& partition, std::uint32_t j, std::uint32_t k);

/// Phi(x) = sum_i (sum_{e in T_i} r_e x^e)^2 / sqrt(t_i).
double phi_value(const DegreeProfile& profile, const std::vector<Sign>& x);

/// sum_i sqrt(t_i).
double phi2_term(const DegreeProfile& profile);

/// Quadratic form of a block at x (x) x.
double block_form(const Block& block, std::size_t n, const std::vector<Sign>& x);

/// Analytic variance proxy 2 alpha beta^max(j,k).
double block_variance_bound(const WeightClassPartition& partition, std::uint32_t j,
                            std::uint32_t k);

/// Certified upper bound on max(||E[B B^T]||, ||E[B^T B]||) for the block
/// (j, k) over uniformly random signs, from the multiplicities D_i.
double block_variance_empirical(const DegreeProfile& profile, const ButterflyTable& table,
                                const WeightClassPartition& partition, std::uint32_t j,
                                std::uint32_t k, std::size_t dense_cap = 2048);

/// d sqrt(alpha beta^max(j,k)).
double block_R_bound(const WeightClassPartition& partition, std::uint32_t j, std::uint32_t k,
                     double d);

struct SpectralOptions {
  double c_alpha = 1.0;
  double delta = 0.01;
  double norm_tol = 1e-6;
  int power_max_iter = 1000;
  std::size_t dense_cap = 2048;
};

struct BlockCert {
  std::uint32_t j = 0;
  std::uint32_t k = 0;
  std::uint64_t size_j = 0;
  std::uint64_t size_k = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  NormBound norm;
  double bernstein_t = 0.0;
  double contribution = 0.0;  // sqrt(rows * cols) * norm.upper
};

struct PhiBoundReport {
  double phi2_term = 0.0;
  double phi1_bound = 0.0;
  double phi_total_bound = 0.0;
  double threshold = 0.0;  // 4 eps^2 m^(3/2) / sqrt(ell)
  double implied_eps = 0.0;
  double certified_val_upper = 1.0;
  std::size_t ell = 0;
  std::uint64_t m = 0;
};

struct LightCertificate {
  CertOutcome outcome;
  double eps = 0.0;
  double d = 0.0;
  PhiBoundReport phi;
  WeightClassPartition partition;
  std::vector<BlockCert> blocks;
};

/// Largest number of (edge, edge) cells a light instance may expand into.
inline constexpr std::uint64_t kMaxBlockCells = 40'000'000;

/// Certifier for instances whose per-(part, vertex) degree is at most d.
/// A value 1/2 + eta forces Phi(x) >= 4 eta^2 m^(3/2) / sqrt(ell), so
/// val <= 1/2 + implied_eps with implied_eps = sqrt(PhiBound sqrt(ell) / (4 m^(3/2))).
/// REFUTED iff PhiBound <= 4 eps^2 m^(3/2) / sqrt(ell).
LightCertificate certify_dbounded(const PartitionedInstance& inst, double eps, double d,
                                  const SpectralOptions& opts);

/// implied_eps and the resulting value bound for a given Phi bound.
double implied_eps_for(double phi_bound, std::uint64_t m, std::size_t ell);

}  // namespace xorcert

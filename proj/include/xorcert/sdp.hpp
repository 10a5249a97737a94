#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "xorcert/instance.hpp"
#include "xorcert/linalg.hpp"
#include "xorcert/reduce.hpp"

namespace xorcert {

/// pi / (2 ln(1 + sqrt 2)), Krivine's upper bound on the Grothendieck constant.
inline const double kGrothendieckUpper = M_PI / (2.0 * std::log(1.0 + std::sqrt(2.0)));

enum class Status { kRefuted, kUnknown };

const char* status_name(Status s);
Status parse_status(const std::string& name);

struct CertOutcome {
  Status status = Status::kUnknown;
  double certified_val_upper = 1.0;
};

/// Diagonal dual certificate for max x^T M y over Boolean x, y. With
/// P = [[diag(d_left), -M/2], [-M^T/2, diag(d_right)]] and lambda_min(P) >= -slack,
/// every Boolean pair satisfies x^T M y <= sum(d) + slack * (a + b) = bound.
struct DualCert {
  std::vector<double> d_left;
  std::vector<double> d_right;
  double slack = 0.0;
  double bound = 0.0;
};

SparseMat dual_block_matrix(const SparseMat& m, const DualCert& cert);

/// Re-checks a dual certificate: dimensions, d >= 0, the PSD condition at
/// the stated slack (plus rel_tol times the scale of P) and the bound sum.
bool check_dual_cert(const SparseMat& m, const DualCert& cert, double rel_tol,
                     std::size_t dense_cap = 2048);

struct Inf1Upper {
  double bound = 0.0;
  DualCert cert;
  int sweeps = 0;
};

/// Sound upper bound on ||M||_{inf->1}. A low-rank Burer-Monteiro ascent on
/// the Grothendieck SDP supplies dual diagonals d_i = |sum_j M_ij v_j| / 2;
/// any PSD deficit of the resulting block matrix is charged as slack. The
/// result is never worse than the diagonally dominant start, whose bound is
/// sum |M_ij|. budget caps the number of ascent sweeps.
Inf1Upper inf1_upper(const SparseMat& m, int budget, std::uint64_t seed = 0,
                     std::size_t dense_cap = 2048);

struct Inf1Lower {
  double value = 0.0;
  std::vector<Sign> x;
  std::vector<Sign> y;
};

/// Boolean pair from random hyperplane rounding of the ascent vectors,
/// polished by alternating best responses. value = x^T M y.
Inf1Lower inf1_lower_round(const SparseMat& m, int trials, std::uint64_t seed);

/// Aggregated sign matrix of a 2-XOR system with empty rows and columns
/// removed. row_ids / col_ids map back to the original indices.
struct SignMatrix {
  SparseMat matrix;
  std::vector<std::uint32_t> row_ids;
  std::vector<std::uint32_t> col_ids;
  std::size_t m = 0;
};

/// Rows are smaller endpoints, columns larger endpoints.
SignMatrix sign_matrix(const KXorInstance& inst);
/// Requires ell = 1.
SignMatrix sign_matrix(const PartitionedInstance& inst);
/// Rows are heavy labels (i, v), columns right vertices.
SignMatrix sign_matrix(const BipartiteInstance& inst);

struct SdpOptions {
  int budget = 2000;
  std::uint64_t seed = 0;
  std::size_t dense_cap = 2048;
};

struct TwoXorResult {
  CertOutcome outcome;
  double bound = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t m = 0;
  DualCert cert;
};

/// Certifies val <= 1/2 + bound / (2m); REFUTED iff bound <= 2 eps m.
TwoXorResult refute_2xor(const SignMatrix& sm, double eps, const SdpOptions& opts);
TwoXorResult refute_2xor(const KXorInstance& inst, double eps, const SdpOptions& opts);
TwoXorResult refute_2xor(const PartitionedInstance& inst, double eps, const SdpOptions& opts);
TwoXorResult refute_2xor(const BipartiteInstance& inst, double eps, const SdpOptions& opts);

}  // namespace xorcert

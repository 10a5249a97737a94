#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace xorcert {

struct Triplet {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double value = 0.0;
};

/// Coordinate-format sparse matrix. Construction sums duplicate
/// coordinates, drops exact zeros and stores entries in row-major order.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  static SparseMat identity(std::size_t n, double scale = 1.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  const std::vector<Triplet>& entries() const noexcept { return entries_; }

  /// y = M x and y = M^T x.
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& x) const;

  std::vector<double> row_l1() const;
  std::vector<double> col_l1() const;
  double abs_sum() const;

  SparseMat transpose() const;
  bool is_symmetric() const;
  Eigen::MatrixXd to_dense() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;
};

/// How the upper end of a NormBound was obtained.
enum class NormMethod {
  kSchurL1,     // max row / column l1 norm
  kExactSmall,  // dense symmetric eigensolve with a rounding margin
};

const char* norm_method_name(NormMethod m);
NormMethod parse_norm_method(const std::string& name);

/// Interval containing the spectral norm: lower from power iteration,
/// upper a proven over-estimate.
struct NormBound {
  double lower = 0.0;
  double upper = 0.0;
  NormMethod method = NormMethod::kSchurL1;
};

/// max(max row l1, max column l1) >= ||M||_2.
double l1_norm_bound(const SparseMat& m);

/// Relative rounding margin added to dense eigenvalue bounds.
inline constexpr double kEigenMargin = 1e-10;

/// Certified norm interval. The lower end is the best power iteration value
/// on M^T M (all-ones start, plus one seeded restart when the gap stays above
/// tol). The upper end is the l1 bound, tightened by a dense eigensolve of
/// the compressed matrix (or its smaller Gram matrix) when the smaller
/// nonzero dimension is at most dense_cap.
NormBound spectral_norm(const SparseMat& m, double tol, int max_iter,
                        std::size_t dense_cap = 2048);

/// Certified lower bound on lambda_min of a symmetric matrix: the larger of
/// the Gershgorin bound and c - spectral_norm(cI - S).upper with
/// c = l1_norm_bound(S).
double min_eig_lower_bound(const SparseMat& s, std::size_t dense_cap = 2048);

/// True iff min_eig_lower_bound(s) >= -slack.
bool min_eig_check(const SparseMat& s, double slack, std::size_t dense_cap = 2048);

/// Independent check that ||M||_2 <= claimed (up to the relative tolerance
/// rel_tol) by a Cholesky factorization of claimed^2 I - G, where G is the
/// Gram matrix on the smaller side. Above dense_cap falls back to comparing
/// against l1_norm_bound.
bool verify_norm_upper(const SparseMat& m, double claimed, double rel_tol,
                       std::size_t dense_cap = 2048);

/// Rectangular matrix Bernstein tail (d1 + d2) exp(-(t^2/2) / (sigma2 + R t / 3)),
/// clamped to [0, 1].
double bernstein_tail(double sigma2, double R, std::size_t d1, std::size_t d2, double t);

/// Smallest t with bernstein_tail <= delta: with L = ln((d1 + d2) / delta),
/// t = L R / 3 + sqrt((L R / 3)^2 + 2 sigma2 L). delta must lie in (0, 1];
/// delta = 1 and d1 + d2 = 0 give 0; sigma2 = R = 0 gives the smallest positive double.
double bernstein_threshold(double sigma2, double R, std::size_t d1, std::size_t d2,
                           double delta);

}  // namespace xorcert

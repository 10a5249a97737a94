#include "xorcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "xorcert/error.hpp"
#include "xorcert/rng.hpp"

namespace xorcert {

namespace {

constexpr std::uint64_t kRestartSeed = 0x9E3779B97F4A7C15ULL;

bool finite(double v) { return std::isfinite(v); }

void check_finite(const SparseMat& m) {
  for (const Triplet& t : m.entries()) {
    require(finite(t.value), ErrorCode::kInvalidArgument, "matrix entry is not finite");
  }
}

// Nonzero rows and columns renumbered densely.
struct Compressed {
  std::vector<std::uint32_t> row_ids;
  std::vector<std::uint32_t> col_ids;
  std::vector<Triplet> entries;  // in compressed coordinates
};

Compressed compress(const SparseMat& m, bool shared_index) {
  std::vector<std::int64_t> row_map(m.rows(), -1), col_map(m.cols(), -1);
  Compressed c;
  if (shared_index) {
    std::vector<bool> used(m.rows(), false);
    for (const Triplet& t : m.entries()) used[t.row] = used[t.col] = true;
    for (std::size_t i = 0; i < used.size(); ++i) {
      if (!used[i]) continue;
      row_map[i] = col_map[i] = static_cast<std::int64_t>(c.row_ids.size());
      c.row_ids.push_back(static_cast<std::uint32_t>(i));
    }
    c.col_ids = c.row_ids;
  } else {
    for (const Triplet& t : m.entries()) {
      if (row_map[t.row] < 0) row_map[t.row] = 0;
      if (col_map[t.col] < 0) col_map[t.col] = 0;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (row_map[i] < 0) continue;
      row_map[i] = static_cast<std::int64_t>(c.row_ids.size());
      c.row_ids.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (col_map[j] < 0) continue;
      col_map[j] = static_cast<std::int64_t>(c.col_ids.size());
      c.col_ids.push_back(static_cast<std::uint32_t>(j));
    }
  }
  c.entries.reserve(m.nnz());
  for (const Triplet& t : m.entries()) {
    c.entries.push_back({static_cast<std::uint32_t>(row_map[t.row]),
                         static_cast<std::uint32_t>(col_map[t.col]), t.value});
  }
  return c;
}

// Gram matrix on the smaller side of the compressed matrix.
Eigen::MatrixXd small_gram(const Compressed& c) {
  const bool rows_small = c.row_ids.size() <= c.col_ids.size();
  const std::size_t k = rows_small ? c.row_ids.size() : c.col_ids.size();
  const std::size_t other = rows_small ? c.col_ids.size() : c.row_ids.size();
  std::vector<std::vector<std::pair<std::uint32_t, double>>> lines(other);
  for (const Triplet& t : c.entries) {
    if (rows_small) {
      lines[t.col].push_back({t.row, t.value});
    } else {
      lines[t.row].push_back({t.col, t.value});
    }
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                            static_cast<Eigen::Index>(k));
  for (const auto& line : lines) {
    for (const auto& [a, va] : line) {
      for (const auto& [b, vb] : line) g(a, b) += va * vb;
    }
  }
  return g;
}

Eigen::MatrixXd dense_of(const Compressed& c) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(c.row_ids.size()),
                                            static_cast<Eigen::Index>(c.col_ids.size()));
  for (const Triplet& t : c.entries) d(t.row, t.col) += t.value;
  return d;
}

// Largest singular value estimate by power iteration on M^T M.
double power_lower(const SparseMat& m, Eigen::VectorXd v, double target, double tol,
                   int max_iter) {
  double best = 0.0;
  double norm_v = v.norm();
  if (norm_v == 0.0) return 0.0;
  v /= norm_v;
  double prev = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = m.multiply(v);
    const double s = w.norm();
    best = std::max(best, s);
    if (target - best <= tol * std::max(1.0, target)) break;
    if (s == 0.0) break;
    Eigen::VectorXd z = m.multiply_transpose(w);
    const double zn = z.norm();
    if (zn == 0.0) break;
    v = z / zn;
    if (prev >= 0.0 && std::abs(s - prev) <= 1e-15 * std::max(1.0, s)) break;
    prev = s;
  }
  return best;
}

}  // namespace

SparseMat::SparseMat(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  for (const Triplet& t : entries) {
    require(t.row < rows_ && t.col < cols_, ErrorCode::kDimensionMismatch,
            "matrix entry index out of range");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const Triplet& t : entries) {
    if (!entries_.empty() && entries_.back().row == t.row && entries_.back().col == t.col) {
      entries_.back().value += t.value;
    } else {
      entries_.push_back(t);
    }
  }
  std::erase_if(entries_, [](const Triplet& t) { return t.value == 0.0; });
}

SparseMat SparseMat::identity(std::size_t n, double scale) {
  std::vector<Triplet> e;
  e.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), scale});
  }
  return SparseMat(n, n, std::move(e));
}

Eigen::VectorXd SparseMat::multiply(const Eigen::VectorXd& x) const {
  require(static_cast<std::size_t>(x.size()) == cols_, ErrorCode::kDimensionMismatch,
          "vector length does not match matrix columns");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows_));
  for (const Triplet& t : entries_) y[t.row] += t.value * x[t.col];
  return y;
}

Eigen::VectorXd SparseMat::multiply_transpose(const Eigen::VectorXd& x) const {
  require(static_cast<std::size_t>(x.size()) == rows_, ErrorCode::kDimensionMismatch,
          "vector length does not match matrix rows");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols_));
  for (const Triplet& t : entries_) y[t.col] += t.value * x[t.row];
  return y;
}

std::vector<double> SparseMat::row_l1() const {
  std::vector<double> out(rows_, 0.0);
  for (const Triplet& t : entries_) out[t.row] += std::abs(t.value);
  return out;
}

std::vector<double> SparseMat::col_l1() const {
  std::vector<double> out(cols_, 0.0);
  for (const Triplet& t : entries_) out[t.col] += std::abs(t.value);
  return out;
}

double SparseMat::abs_sum() const {
  double s = 0.0;
  for (const Triplet& t : entries_) s += std::abs(t.value);
  return s;
}

SparseMat SparseMat::transpose() const {
  std::vector<Triplet> e;
  e.reserve(entries_.size());
  for (const Triplet& t : entries_) e.push_back({t.col, t.row, t.value});
  return SparseMat(cols_, rows_, std::move(e));
}

bool SparseMat::is_symmetric() const {
  if (rows_ != cols_) return false;
  SparseMat t = transpose();
  if (t.entries_.size() != entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Triplet& a = entries_[i];
    const Triplet& b = t.entries_[i];
    if (a.row != b.row || a.col != b.col || a.value != b.value) return false;
  }
  return true;
}

Eigen::MatrixXd SparseMat::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_),
                                            static_cast<Eigen::Index>(cols_));
  for (const Triplet& t : entries_) d(t.row, t.col) = t.value;
  return d;
}

const char* norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::kSchurL1:
      return "schur-l1";
    case NormMethod::kExactSmall:
      return "exact-small";
  }
  return "schur-l1";
}

NormMethod parse_norm_method(const std::string& name) {
  if (name == "schur-l1") return NormMethod::kSchurL1;
  if (name == "exact-small") return NormMethod::kExactSmall;
  fail(ErrorCode::kParse, "unknown norm method '" + name + "'");
}

double l1_norm_bound(const SparseMat& m) {
  double best = 0.0;
  for (double v : m.row_l1()) best = std::max(best, v);
  for (double v : m.col_l1()) best = std::max(best, v);
  return best;
}

NormBound spectral_norm(const SparseMat& m, double tol, int max_iter, std::size_t dense_cap) {
  require(tol > 0.0, ErrorCode::kInvalidArgument, "tolerance must be positive");
  check_finite(m);
  const double l1 = l1_norm_bound(m);
  if (m.nnz() == 0) return {0.0, 0.0, NormMethod::kSchurL1};

  NormBound out{0.0, l1, NormMethod::kSchurL1};
  const bool symmetric = m.is_symmetric();
  Compressed c = compress(m, symmetric);
  const std::size_t small = std::min(c.row_ids.size(), c.col_ids.size());
  if (small <= dense_cap) {
    double dense_upper = 0.0;
    double dense_lower = 0.0;
    if (symmetric) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_of(c), Eigen::EigenvaluesOnly);
      require(es.info() == Eigen::Success, ErrorCode::kInternal, "eigensolver failed");
      const double top = es.eigenvalues().cwiseAbs().maxCoeff();
      dense_upper = top + kEigenMargin * l1;
      dense_lower = top - kEigenMargin * l1;
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small_gram(c), Eigen::EigenvaluesOnly);
      require(es.info() == Eigen::Success, ErrorCode::kInternal, "eigensolver failed");
      const double top = std::max(0.0, es.eigenvalues().maxCoeff());
      dense_upper = std::sqrt(top + kEigenMargin * l1 * l1);
      dense_lower = std::sqrt(std::max(0.0, top - kEigenMargin * l1 * l1));
    }
    if (dense_upper < out.upper) out = {0.0, dense_upper, NormMethod::kExactSmall};
    out.lower = std::max(0.0, dense_lower);
  }

  Eigen::VectorXd start = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m.cols()));
  double lower = power_lower(m, start, out.upper, tol, max_iter);
  if (out.upper - lower > tol * std::max(1.0, out.upper)) {
    Xoshiro256 rng(kRestartSeed);
    for (Eigen::Index i = 0; i < start.size(); ++i) start[i] = rng.normal();
    lower = std::max(lower, power_lower(m, start, out.upper, tol, max_iter));
  }
  out.lower = std::min(std::max(out.lower, lower), out.upper);
  return out;
}

double min_eig_lower_bound(const SparseMat& s, std::size_t dense_cap) {
  require(s.rows() == s.cols(), ErrorCode::kDimensionMismatch, "matrix must be square");
  check_finite(s);
  if (s.rows() == 0) return 0.0;

  std::vector<double> diag(s.rows(), 0.0), off(s.rows(), 0.0);
  for (const Triplet& t : s.entries()) {
    if (t.row == t.col) {
      diag[t.row] += t.value;
    } else {
      off[t.row] += std::abs(t.value);
    }
  }
  double gershgorin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < diag.size(); ++i) gershgorin = std::min(gershgorin, diag[i] - off[i]);

  // With c = l1_norm_bound(S), c - l1_norm_bound(cI - S) is exactly the
  // Gershgorin value, so only the dense route can improve on it.
  double best = gershgorin;
  const double c_shift = l1_norm_bound(s);

  if (!s.is_symmetric()) return best;
  Compressed c = compress(s, true);
  if (c.row_ids.size() <= dense_cap && !c.row_ids.empty()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_of(c), Eigen::EigenvaluesOnly);
    require(es.info() == Eigen::Success, ErrorCode::kInternal, "eigensolver failed");
    double lam = es.eigenvalues().minCoeff() - kEigenMargin * c_shift;
    if (c.row_ids.size() < s.rows()) lam = std::min(lam, 0.0);
    best = std::max(best, lam);
  }
  return best;
}

bool min_eig_check(const SparseMat& s, double slack, std::size_t dense_cap) {
  return min_eig_lower_bound(s, dense_cap) >= -slack;
}

bool verify_norm_upper(const SparseMat& m, double claimed, double rel_tol,
                       std::size_t dense_cap) {
  if (!finite(claimed) || claimed < 0.0) return false;
  check_finite(m);
  if (m.nnz() == 0) return true;
  const double l1 = l1_norm_bound(m);
  if (claimed >= l1) return true;
  Compressed c = compress(m, false);
  const std::size_t k = std::min(c.row_ids.size(), c.col_ids.size());
  if (k > dense_cap) return false;
  Eigen::MatrixXd g = small_gram(c);
  const double shift = claimed * claimed * (1.0 + rel_tol) + rel_tol * l1 * l1;
  Eigen::MatrixXd a = shift * Eigen::MatrixXd::Identity(g.rows(), g.cols()) - g;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  return llt.info() == Eigen::Success;
}

double bernstein_tail(double sigma2, double R, std::size_t d1, std::size_t d2, double t) {
  require(sigma2 >= 0.0 && R >= 0.0 && t >= 0.0, ErrorCode::kInvalidArgument,
          "Bernstein parameters must be nonnegative");
  const double dim = static_cast<double>(d1 + d2);
  const double denom = sigma2 + R * t / 3.0;
  double value;
  if (t == 0.0) {
    value = dim;
  } else if (denom == 0.0) {
    value = 0.0;
  } else {
    value = dim * std::exp(-(t * t / 2.0) / denom);
  }
  return std::clamp(value, 0.0, 1.0);
}

double bernstein_threshold(double sigma2, double R, std::size_t d1, std::size_t d2,
                           double delta) {
  require(sigma2 >= 0.0 && R >= 0.0, ErrorCode::kInvalidArgument,
          "Bernstein parameters must be nonnegative");
  require(delta > 0.0 && delta <= 1.0, ErrorCode::kInvalidArgument,
          "delta must lie in (0, 1]");
  const double dim = static_cast<double>(d1 + d2);
  if (dim == 0.0 || delta == 1.0) return 0.0;
  const double L = std::log(dim / delta);
  if (L <= 0.0) return 0.0;
  // A zero-variance sum has tail 0 at every t > 0 but 1 at t = 0.
  if (sigma2 == 0.0 && R == 0.0) return std::numeric_limits<double>::min();
  const double a = L * R / 3.0;
  return a + std::sqrt(a * a + 2.0 * sigma2 * L);
}

}  // namespace xorcert

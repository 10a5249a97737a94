#include "xorcert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "xorcert/error.hpp"
#include "xorcert/rng.hpp"

namespace xorcert {

namespace {

using Mat = Eigen::MatrixXd;

Mat sparse_times(const SparseMat& m, const Mat& v) {
  Mat out = Mat::Zero(static_cast<Eigen::Index>(m.rows()), v.cols());
  for (const Triplet& t : m.entries()) out.row(t.row) += t.value * v.row(t.col);
  return out;
}

Mat sparse_transpose_times(const SparseMat& m, const Mat& u) {
  Mat out = Mat::Zero(static_cast<Eigen::Index>(m.cols()), u.cols());
  for (const Triplet& t : m.entries()) out.row(t.col) += t.value * u.row(t.row);
  return out;
}

Mat random_unit_rows(std::size_t n, Eigen::Index r, Xoshiro256& rng) {
  Mat out(static_cast<Eigen::Index>(n), r);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < r; ++j) out(i, j) = rng.normal();
    out.row(i).normalize();
  }
  return out;
}

// Replaces each row of `target` by the normalized row of `field`, keeping
// the old row when the field vanishes.
void align_rows(Mat& target, const Mat& field) {
  for (Eigen::Index i = 0; i < target.rows(); ++i) {
    const double n = field.row(i).norm();
    if (n > 0.0) target.row(i) = field.row(i) / n;
  }
}

struct Ascent {
  Mat u;
  Mat v;
  int sweeps = 0;
};

Ascent burer_monteiro(const SparseMat& m, int budget, std::uint64_t seed) {
  const std::size_t a = m.rows();
  const std::size_t b = m.cols();
  const auto total = static_cast<double>(a + b);
  const auto r = static_cast<Eigen::Index>(
      std::min(a + b, static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * total))) + 1));
  Xoshiro256 rng(seed);
  Ascent s{random_unit_rows(a, r, rng), random_unit_rows(b, r, rng), 0};
  double prev = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < budget; ++it) {
    align_rows(s.u, sparse_times(m, s.v));
    Mat h = sparse_transpose_times(m, s.u);
    align_rows(s.v, h);
    s.sweeps = it + 1;
    const double obj = (h.array() * s.v.array()).sum();
    if (obj - prev <= 1e-13 * std::max(1.0, std::abs(obj))) break;
    prev = obj;
  }
  return s;
}

DualCert finish_cert(const SparseMat& m, std::vector<double> dl, std::vector<double> dr,
                     std::size_t dense_cap) {
  DualCert cert{std::move(dl), std::move(dr), 0.0, 0.0};
  const double lam = min_eig_lower_bound(dual_block_matrix(m, cert), dense_cap);
  cert.slack = std::max(0.0, -lam);
  double sum = 0.0;
  for (double d : cert.d_left) sum += d;
  for (double d : cert.d_right) sum += d;
  cert.bound = sum + cert.slack * static_cast<double>(m.rows() + m.cols());
  return cert;
}

Sign sign_of(double v) { return v < 0.0 ? Sign{-1} : Sign{1}; }

double bilinear(const SparseMat& m, const std::vector<Sign>& x, const std::vector<Sign>& y) {
  double s = 0.0;
  for (const Triplet& t : m.entries()) s += t.value * x[t.row] * y[t.col];
  return s;
}

void polish(const SparseMat& m, std::vector<Sign>& x, std::vector<Sign>& y) {
  double value = bilinear(m, x, y);
  for (int round = 0; round < 1000; ++round) {
    std::vector<double> col(m.cols(), 0.0), row(m.rows(), 0.0);
    for (const Triplet& t : m.entries()) col[t.col] += t.value * x[t.row];
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = sign_of(col[j]);
    for (const Triplet& t : m.entries()) row[t.row] += t.value * y[t.col];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = sign_of(row[i]);
    const double next = bilinear(m, x, y);
    if (next <= value) break;
    value = next;
  }
}

SignMatrix compress_signs(std::size_t rows, std::size_t cols,
                          const std::map<std::pair<std::uint32_t, std::uint32_t>, double>& mu,
                          std::size_t m) {
  std::vector<std::int64_t> rmap(rows, -1), cmap(cols, -1);
  for (const auto& [key, value] : mu) {
    if (value == 0.0) continue;
    rmap[key.first] = 0;
    cmap[key.second] = 0;
  }
  SignMatrix out;
  out.m = m;
  for (std::size_t i = 0; i < rows; ++i) {
    if (rmap[i] < 0) continue;
    rmap[i] = static_cast<std::int64_t>(out.row_ids.size());
    out.row_ids.push_back(static_cast<std::uint32_t>(i));
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (cmap[j] < 0) continue;
    cmap[j] = static_cast<std::int64_t>(out.col_ids.size());
    out.col_ids.push_back(static_cast<std::uint32_t>(j));
  }
  std::vector<Triplet> entries;
  for (const auto& [key, value] : mu) {
    if (value == 0.0) continue;
    entries.push_back({static_cast<std::uint32_t>(rmap[key.first]),
                       static_cast<std::uint32_t>(cmap[key.second]), value});
  }
  out.matrix = SparseMat(out.row_ids.size(), out.col_ids.size(), std::move(entries));
  return out;
}

}  // namespace

const char* status_name(Status s) { return s == Status::kRefuted ? "REFUTED" : "UNKNOWN"; }

Status parse_status(const std::string& name) {
  if (name == "REFUTED") return Status::kRefuted;
  if (name == "UNKNOWN") return Status::kUnknown;
  fail(ErrorCode::kParse, "unknown status '" + name + "'");
}

SparseMat dual_block_matrix(const SparseMat& m, const DualCert& cert) {
  require(cert.d_left.size() == m.rows() && cert.d_right.size() == m.cols(),
          ErrorCode::kDimensionMismatch, "dual certificate does not match the matrix");
  const auto a = static_cast<std::uint32_t>(m.rows());
  std::vector<Triplet> e;
  e.reserve(2 * m.nnz() + m.rows() + m.cols());
  for (std::uint32_t i = 0; i < m.rows(); ++i) e.push_back({i, i, cert.d_left[i]});
  for (std::uint32_t j = 0; j < m.cols(); ++j) e.push_back({a + j, a + j, cert.d_right[j]});
  for (const Triplet& t : m.entries()) {
    e.push_back({t.row, a + t.col, -0.5 * t.value});
    e.push_back({a + t.col, t.row, -0.5 * t.value});
  }
  const std::size_t n = m.rows() + m.cols();
  return SparseMat(n, n, std::move(e));
}

bool check_dual_cert(const SparseMat& m, const DualCert& cert, double rel_tol,
                     std::size_t dense_cap) {
  if (cert.d_left.size() != m.rows() || cert.d_right.size() != m.cols()) return false;
  double sum = 0.0;
  for (double d : cert.d_left) {
    if (!std::isfinite(d) || d < 0.0) return false;
    sum += d;
  }
  for (double d : cert.d_right) {
    if (!std::isfinite(d) || d < 0.0) return false;
    sum += d;
  }
  if (!std::isfinite(cert.slack) || cert.slack < 0.0 || !std::isfinite(cert.bound)) return false;
  const double claimed = sum + cert.slack * static_cast<double>(m.rows() + m.cols());
  const double scale = std::max(1.0, std::abs(claimed));
  if (std::abs(claimed - cert.bound) > rel_tol * scale) return false;
  SparseMat p = dual_block_matrix(m, cert);
  const double p_scale = std::max(1.0, l1_norm_bound(p));
  return min_eig_check(p, cert.slack + rel_tol * p_scale, dense_cap);
}

Inf1Upper inf1_upper(const SparseMat& m, int budget, std::uint64_t seed,
                     std::size_t dense_cap) {
  require(budget >= 0, ErrorCode::kInvalidArgument, "budget must be nonnegative");
  for (const Triplet& t : m.entries()) {
    require(std::isfinite(t.value), ErrorCode::kInvalidArgument, "matrix entry is not finite");
  }
  std::vector<double> dl = m.row_l1(), dr = m.col_l1();
  for (double& d : dl) d *= 0.5;
  for (double& d : dr) d *= 0.5;
  Inf1Upper out;
  out.cert = finish_cert(m, std::move(dl), std::move(dr), dense_cap);
  out.bound = out.cert.bound;
  if (m.nnz() == 0 || budget == 0) return out;

  Ascent s = burer_monteiro(m, budget, seed);
  out.sweeps = s.sweeps;
  Mat g = sparse_times(m, s.v);
  Mat h = sparse_transpose_times(m, s.u);
  std::vector<double> al(m.rows()), ar(m.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i) al[i] = 0.5 * g.row(i).norm();
  for (Eigen::Index j = 0; j < h.rows(); ++j) ar[j] = 0.5 * h.row(j).norm();
  DualCert ascent = finish_cert(m, std::move(al), std::move(ar), dense_cap);
  if (ascent.bound < out.bound) {
    out.cert = std::move(ascent);
    out.bound = out.cert.bound;
  }
  return out;
}

Inf1Lower inf1_lower_round(const SparseMat& m, int trials, std::uint64_t seed) {
  require(trials >= 1, ErrorCode::kInvalidArgument, "at least one rounding trial is required");
  Inf1Lower best;
  best.x.assign(m.rows(), 1);
  best.y.assign(m.cols(), 1);
  polish(m, best.x, best.y);
  best.value = bilinear(m, best.x, best.y);
  if (m.nnz() == 0) return best;

  Ascent s = burer_monteiro(m, 500, seed);
  Xoshiro256 rng(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
  for (int trial = 0; trial < trials; ++trial) {
    Eigen::VectorXd g(s.u.cols());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = rng.normal();
    std::vector<Sign> x(m.rows()), y(m.cols());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = sign_of(s.u.row(i).dot(g));
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = sign_of(s.v.row(j).dot(g));
    polish(m, x, y);
    const double value = bilinear(m, x, y);
    if (value > best.value) best = {value, std::move(x), std::move(y)};
  }
  return best;
}

SignMatrix sign_matrix(const KXorInstance& inst) {
  require(inst.k() == 2, ErrorCode::kInvalidArgument, "sign matrix needs a 2-XOR instance");
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> mu;
  for (const Clause& c : inst.clauses()) mu[{c.vars[0], c.vars[1]}] += c.sign;
  return compress_signs(inst.n(), inst.n(), mu, inst.m());
}

SignMatrix sign_matrix(const PartitionedInstance& inst) {
  require(inst.ell() == 1, ErrorCode::kInvalidArgument,
          "sign matrix needs a single-part instance");
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> mu;
  for (const PartConstraint& c : inst.constraints()) mu[{c.u, c.v}] += c.sign;
  return compress_signs(inst.n(), inst.n(), mu, inst.m());
}

SignMatrix sign_matrix(const BipartiteInstance& inst) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> mu;
  for (const BipartiteConstraint& c : inst.constraints) {
    require(c.left < inst.left.size() && c.right < inst.n_right, ErrorCode::kInvalidArgument,
            "bipartite constraint out of range");
    mu[{c.left, c.right}] += c.sign;
  }
  return compress_signs(inst.left.size(), inst.n_right, mu, inst.m());
}

TwoXorResult refute_2xor(const SignMatrix& sm, double eps, const SdpOptions& opts) {
  require(sm.m >= 1, ErrorCode::kEmptyInstance, "empty instance");
  require(eps > 0.0 && eps < 0.5, ErrorCode::kInvalidArgument, "eps must lie in (0, 1/2)");
  Inf1Upper up = inf1_upper(sm.matrix, opts.budget, opts.seed, opts.dense_cap);
  TwoXorResult out;
  out.bound = up.bound;
  out.cert = std::move(up.cert);
  out.rows = sm.matrix.rows();
  out.cols = sm.matrix.cols();
  out.m = sm.m;
  const double m = static_cast<double>(sm.m);
  out.outcome.certified_val_upper = std::min(1.0, 0.5 + out.bound / (2.0 * m));
  out.outcome.status = out.bound <= 2.0 * eps * m ? Status::kRefuted : Status::kUnknown;
  return out;
}

TwoXorResult refute_2xor(const KXorInstance& inst, double eps, const SdpOptions& opts) {
  return refute_2xor(sign_matrix(inst), eps, opts);
}

TwoXorResult refute_2xor(const PartitionedInstance& inst, double eps, const SdpOptions& opts) {
  return refute_2xor(sign_matrix(inst), eps, opts);
}

TwoXorResult refute_2xor(const BipartiteInstance& inst, double eps, const SdpOptions& opts) {
  return refute_2xor(sign_matrix(inst), eps, opts);
}

}  // namespace xorcert

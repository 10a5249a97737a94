#include "xorcert/spectral_cert.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "xorcert/error.hpp"

namespace xorcert {

namespace {

struct Cell {
  std::uint64_t row;
  std::uint64_t col;
  double value;
};

// Class of every ordered pair of vertices active in one part.
struct PartClasses {
  std::vector<Vertex> vertices;
  std::vector<std::uint32_t> cls;  // vertices.size()^2, row-major

  std::size_t index(Vertex v) const {
    return static_cast<std::size_t>(
        std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
  }
  std::uint32_t at(Vertex a, Vertex b) const {
    return cls[index(a) * vertices.size() + index(b)];
  }
};

PartClasses part_classes(const PartProfile& part, const ButterflyTable& table,
                         const WeightClassPartition& partition) {
  PartClasses pc;
  for (const auto& [v, d] : part.degree) pc.vertices.push_back(v);
  const std::size_t a = pc.vertices.size();
  pc.cls.resize(a * a);
  for (std::size_t x = 0; x < a; ++x) {
    for (std::size_t y = 0; y < a; ++y) {
      pc.cls[x * a + y] = partition.class_of(table.gamma(pc.vertices[x], pc.vertices[y]));
    }
  }
  return pc;
}

void check_cell_budget(const DegreeProfile& profile) {
  std::uint64_t cells = 0;
  for (const PartProfile& p : profile.parts) {
    cells += static_cast<std::uint64_t>(p.edges.size()) * p.edges.size();
  }
  require(cells <= kMaxBlockCells, ErrorCode::kPrecondition,
          "light instance expands into " + std::to_string(cells) +
              " block cells, above the supported limit");
}

// Visits every (edge, edge) cell of the selected parts with its block.
template <typename Fn>
void for_each_cell(const DegreeProfile& profile, const ButterflyTable& table,
                   const WeightClassPartition& partition, std::optional<std::size_t> only,
                   Fn&& fn) {
  for (std::size_t i = 0; i < profile.parts.size(); ++i) {
    if (only && *only != i) continue;
    const PartProfile& part = profile.parts[i];
    const PartClasses pc = part_classes(part, table, partition);
    for (const EdgeAggregate& e : part.edges) {
      for (const EdgeAggregate& f : part.edges) {
        fn(part, e, f, pc.at(e.u, f.u), pc.at(e.v, f.v));
      }
    }
  }
}

Block assemble(std::uint32_t j, std::uint32_t k, std::vector<Cell> cells) {
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Cell> merged;
  for (const Cell& c : cells) {
    if (!merged.empty() && merged.back().row == c.row && merged.back().col == c.col) {
      merged.back().value += c.value;
    } else {
      merged.push_back(c);
    }
  }
  std::erase_if(merged, [](const Cell& c) { return c.value == 0.0; });

  Block b;
  b.j = j;
  b.k = k;
  for (const Cell& c : merged) {
    b.row_keys.push_back(c.row);
    b.col_keys.push_back(c.col);
  }
  std::sort(b.row_keys.begin(), b.row_keys.end());
  b.row_keys.erase(std::unique(b.row_keys.begin(), b.row_keys.end()), b.row_keys.end());
  std::sort(b.col_keys.begin(), b.col_keys.end());
  b.col_keys.erase(std::unique(b.col_keys.begin(), b.col_keys.end()), b.col_keys.end());
  auto local = [](const std::vector<std::uint64_t>& keys, std::uint64_t key) {
    return static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), key) -
                                      keys.begin());
  };
  std::vector<Triplet> t;
  t.reserve(merged.size());
  for (const Cell& c : merged) {
    t.push_back({local(b.row_keys, c.row), local(b.col_keys, c.col), c.value});
  }
  b.matrix = SparseMat(b.row_keys.size(), b.col_keys.size(), std::move(t));
  return b;
}

double cell_value(const PartProfile& part, const EdgeAggregate& e, const EdgeAggregate& f) {
  const double inv = 1.0 / std::sqrt(static_cast<double>(part.t));
  if (&e == &f) {
    return static_cast<double>(e.mu * e.mu - static_cast<std::int64_t>(e.dup)) * inv;
  }
  return static_cast<double>(e.mu * f.mu) * inv;
}

}  // namespace

double ButterflyTable::gamma(Vertex v, Vertex w) const {
  const std::uint64_t key = pair_key(n, v, w);
  auto it = std::lower_bound(
      entries.begin(), entries.end(), key,
      [](const std::pair<std::uint64_t, double>& p, std::uint64_t k) { return p.first < k; });
  return it != entries.end() && it->first == key ? it->second : 0.0;
}

ButterflyTable butterfly(const DegreeProfile& profile) {
  std::unordered_map<std::uint64_t, double> acc;
  for (const PartProfile& part : profile.parts) {
    const double t = static_cast<double>(part.t);
    for (const auto& [v, dv] : part.degree) {
      for (const auto& [w, dw] : part.degree) {
        acc[pair_key(profile.n, v, w)] += static_cast<double>(dv) * dw / t;
      }
    }
  }
  ButterflyTable table;
  table.n = profile.n;
  table.entries.assign(acc.begin(), acc.end());
  std::sort(table.entries.begin(), table.entries.end());
  for (const auto& [key, g] : table.entries) table.total += g;
  return table;
}

std::uint32_t WeightClassPartition::class_of(double gamma) const {
  for (std::uint32_t j = 0; j < thresholds.size(); ++j) {
    if (gamma <= thresholds[j]) return j;
  }
  return L;
}

WeightClassPartition weight_classes(const ButterflyTable& table, const WeightParams& p) {
  require(p.m >= 1, ErrorCode::kEmptyInstance, "empty instance");
  require(p.n >= 2, ErrorCode::kInvalidArgument, "weight classes need n >= 2");
  require(p.eps > 0.0 && p.d > 0.0 && p.c_alpha > 0.0 && p.ell >= 1,
          ErrorCode::kInvalidArgument, "weight class parameters must be positive");
  const double log_n = std::log2(static_cast<double>(p.n));
  const double m = static_cast<double>(p.m);
  WeightClassPartition w;
  w.alpha = p.c_alpha * p.d * p.d * static_cast<double>(p.ell) * std::pow(log_n, 6) /
            (std::pow(p.eps, 4) * m);
  w.L = static_cast<std::uint32_t>(std::ceil(log_n));
  w.beta = std::pow(4.0 * m / w.alpha, 1.0 / w.L);
  if (!(w.beta >= 1.0)) {
    w.beta = 1.0;
    w.beta_clamped = true;
  }
  w.thresholds.resize(w.L + 1);
  for (std::uint32_t j = 0; j <= w.L; ++j) w.thresholds[j] = w.alpha * std::pow(w.beta, j);

  w.class_sizes.assign(w.L + 1, 0);
  const std::uint64_t all = static_cast<std::uint64_t>(p.n) * p.n;
  w.class_sizes[0] = all - table.entries.size();
  for (const auto& [key, g] : table.entries) w.class_sizes[w.class_of(g)] += 1;
  return w;
}

std::vector<Block> build_blocks(const DegreeProfile& profile, const ButterflyTable& table,
                                const WeightClassPartition& partition,
                                std::optional<std::size_t> part) {
  check_cell_budget(profile);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Cell>> cells;
  const std::size_t n = profile.n;
  for_each_cell(profile, table, partition, part,
                [&](const PartProfile& p, const EdgeAggregate& e, const EdgeAggregate& f,
                    std::uint32_t j, std::uint32_t k) {
                  const double value = cell_value(p, e, f);
                  if (value == 0.0) return;
                  cells[{j, k}].push_back(
                      {pair_key(n, e.u, f.u), pair_key(n, e.v, f.v), value});
                });
  std::vector<Block> out;
  for (auto& [jk, list] : cells) {
    Block b = assemble(jk.first, jk.second, std::move(list));
    if (b.matrix.nnz() > 0) out.push_back(std::move(b));
  }
  return out;
}

Block build_block(const DegreeProfile& profile, const ButterflyTable& table,
                  const WeightClassPartition& partition, std::uint32_t j, std::uint32_t k) {
  for (Block& b : build_blocks(profile, table, partition)) {
    if (b.j == j && b.k == k) return std::move(b);
  }
  Block empty;
  empty.j = j;
  empty.k = k;
  return empty;
}

double phi_value(const DegreeProfile& profile, const std::vector<Sign>& x) {
  require(x.size() == profile.n, ErrorCode::kDimensionMismatch, "x does not match n");
  double phi = 0.0;
  for (const PartProfile& part : profile.parts) {
    std::int64_t p = 0;
    for (const EdgeAggregate& e : part.edges) p += e.mu * x[e.u] * x[e.v];
    phi += static_cast<double>(p * p) / std::sqrt(static_cast<double>(part.t));
  }
  return phi;
}

double phi2_term(const DegreeProfile& profile) {
  double s = 0.0;
  for (const PartProfile& part : profile.parts) s += std::sqrt(static_cast<double>(part.t));
  return s;
}

double block_form(const Block& block, std::size_t n, const std::vector<Sign>& x) {
  auto prod = [&](std::uint64_t key) {
    return x[static_cast<std::size_t>(key / n)] * x[static_cast<std::size_t>(key % n)];
  };
  double s = 0.0;
  for (const Triplet& t : block.matrix.entries()) {
    s += t.value * prod(block.row_keys[t.row]) * prod(block.col_keys[t.col]);
  }
  return s;
}

double block_variance_bound(const WeightClassPartition& partition, std::uint32_t j,
                            std::uint32_t k) {
  return 2.0 * partition.alpha * std::pow(partition.beta, std::max(j, k));
}

double block_variance_empirical(const DegreeProfile& profile, const ButterflyTable& table,
                                const WeightClassPartition& partition, std::uint32_t j,
                                std::uint32_t k, std::size_t dense_cap) {
  check_cell_budget(profile);
  const std::size_t n = profile.n;
  std::map<std::uint64_t, std::uint32_t> rows, cols;
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, double>> rr, cc;
  for_each_cell(profile, table, partition, std::nullopt,
                [&](const PartProfile& p, const EdgeAggregate& e, const EdgeAggregate& f,
                    std::uint32_t cj, std::uint32_t ck) {
                  if (cj != j || ck != k) return;
                  const double t = static_cast<double>(p.t);
                  const std::uint64_t row = pair_key(n, e.u, f.u);
                  const std::uint64_t col = pair_key(n, e.v, f.v);
                  rows.emplace(row, 0);
                  cols.emplace(col, 0);
                  double var;
                  if (&e == &f) {
                    const double d = e.dup;
                    var = (2.0 * d * d - 2.0 * d) / t;
                  } else {
                    var = static_cast<double>(e.dup) * f.dup / t;
                    if (e.v == f.v) rr.push_back({{row, pair_key(n, f.u, e.u)}, var});
                    if (e.u == f.u) cc.push_back({{col, pair_key(n, f.v, e.v)}, var});
                  }
                  rr.push_back({{row, row}, var});
                  cc.push_back({{col, col}, var});
                });
  auto index = [](std::map<std::uint64_t, std::uint32_t>& m) {
    std::uint32_t next = 0;
    for (auto& [key, id] : m) id = next++;
  };
  index(rows);
  index(cols);
  auto norm_of = [&](const std::map<std::uint64_t, std::uint32_t>& ids,
                     const std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, double>>&
                         list) {
    std::vector<Triplet> t;
    t.reserve(list.size());
    for (const auto& [key, v] : list) t.push_back({ids.at(key.first), ids.at(key.second), v});
    return spectral_norm(SparseMat(ids.size(), ids.size(), std::move(t)), 1e-9, 2000, dense_cap)
        .upper;
  };
  if (rows.empty()) return 0.0;
  return std::max(norm_of(rows, rr), norm_of(cols, cc));
}

double block_R_bound(const WeightClassPartition& partition, std::uint32_t j, std::uint32_t k,
                     double d) {
  return d * std::sqrt(partition.alpha * std::pow(partition.beta, std::max(j, k)));
}

double implied_eps_for(double phi_bound, std::uint64_t m, std::size_t ell) {
  const double md = static_cast<double>(m);
  return std::sqrt(phi_bound * std::sqrt(static_cast<double>(ell)) / (4.0 * std::pow(md, 1.5)));
}

LightCertificate certify_dbounded(const PartitionedInstance& inst, double eps, double d,
                                  const SpectralOptions& opts) {
  require(inst.m() >= 1, ErrorCode::kEmptyInstance, "empty instance");
  require(eps > 0.0 && eps < 0.5, ErrorCode::kInvalidArgument, "eps must lie in (0, 1/2)");
  require(opts.delta > 0.0 && opts.delta <= 1.0, ErrorCode::kInvalidArgument,
          "delta must lie in (0, 1]");
  const DegreeProfile profile = degree_profile(inst);
  require(static_cast<double>(profile.max_degree()) <= d, ErrorCode::kPrecondition,
          "instance is not d-bounded: decompose it first");

  LightCertificate out;
  out.eps = eps;
  out.d = d;
  const ButterflyTable table = butterfly(profile);
  out.partition = weight_classes(
      table, {opts.c_alpha, d, eps, profile.m, profile.ell(), profile.n});

  const double delta_block = opts.delta / std::pow(static_cast<double>(out.partition.L + 1), 2);
  double phi1 = 0.0;
  for (const Block& b : build_blocks(profile, table, out.partition)) {
    BlockCert bc;
    bc.j = b.j;
    bc.k = b.k;
    bc.size_j = out.partition.class_sizes[b.j];
    bc.size_k = out.partition.class_sizes[b.k];
    bc.rows = b.row_keys.size();
    bc.cols = b.col_keys.size();
    bc.norm = spectral_norm(b.matrix, opts.norm_tol, opts.power_max_iter, opts.dense_cap);
    bc.bernstein_t = bernstein_threshold(block_variance_bound(out.partition, b.j, b.k),
                                         block_R_bound(out.partition, b.j, b.k, d), bc.size_j,
                                         bc.size_k, delta_block);
    bc.contribution =
        std::sqrt(static_cast<double>(bc.rows) * static_cast<double>(bc.cols)) * bc.norm.upper;
    phi1 += bc.contribution;
    out.blocks.push_back(bc);
  }

  PhiBoundReport& r = out.phi;
  r.m = profile.m;
  r.ell = profile.ell();
  r.phi2_term = phi2_term(profile);
  r.phi1_bound = phi1;
  r.phi_total_bound = r.phi1_bound + r.phi2_term;
  const double m = static_cast<double>(r.m);
  r.threshold = 4.0 * eps * eps * std::pow(m, 1.5) / std::sqrt(static_cast<double>(r.ell));
  r.implied_eps = implied_eps_for(r.phi_total_bound, r.m, r.ell);
  r.certified_val_upper = std::min(1.0, 0.5 + r.implied_eps);
  out.outcome.certified_val_upper = r.certified_val_upper;
  out.outcome.status = r.phi_total_bound <= r.threshold ? Status::kRefuted : Status::kUnknown;
  return out;
}

}  // namespace xorcert

#include "xorcert/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "xorcert/error.hpp"

namespace xorcert {

namespace {

// Visits all 2^n sign vectors; x starts at all -1 and each step flips the
// variable given by the lowest set bit of the step counter.
template <typename Flip, typename Visit>
void gray_enumerate(std::size_t n, Flip&& flip, Visit&& visit) {
  visit();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    flip(static_cast<std::size_t>(std::countr_zero(step)));
    visit();
  }
}

std::vector<std::vector<std::uint32_t>> occurrences(std::size_t n,
                                                    const std::vector<std::vector<Vertex>>& sets) {
  std::vector<std::vector<std::uint32_t>> occ(n);
  for (std::uint32_t idx = 0; idx < sets.size(); ++idx) {
    for (Vertex v : sets[idx]) occ[v].push_back(idx);
  }
  return occ;
}

}  // namespace

BruteResult brute_force_val(const KXorInstance& inst, std::size_t cap) {
  require(inst.m() >= 1, ErrorCode::kEmptyInstance, "empty instance");
  require(inst.n() <= cap && inst.n() < 63, ErrorCode::kPrecondition,
          "n = " + std::to_string(inst.n()) + " exceeds the brute-force cap");
  const std::size_t n = inst.n();
  std::vector<std::vector<Vertex>> sets;
  sets.reserve(inst.m());
  for (const Clause& c : inst.clauses()) sets.push_back(c.vars);
  const auto occ = occurrences(n, sets);

  std::vector<Sign> x(n, -1);
  std::vector<int> term(inst.m());
  std::int64_t satisfied = 0;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    const Clause& c = inst.clauses()[i];
    int p = c.sign;
    for (Vertex v : c.vars) p *= x[v];
    term[i] = p;
    satisfied += p == 1;
  }

  std::int64_t best = -1;
  std::vector<Sign> best_x;
  gray_enumerate(
      n,
      [&](std::size_t v) {
        x[v] = static_cast<Sign>(-x[v]);
        for (std::uint32_t i : occ[v]) {
          satisfied += term[i] == 1 ? -1 : 1;
          term[i] = -term[i];
        }
      },
      [&] {
        if (satisfied > best || (satisfied == best && x < best_x)) {
          best = satisfied;
          best_x = x;
        }
      });
  return {{static_cast<std::uint64_t>(best), inst.m()}, {best_x, {}}};
}

BruteResult brute_force_val(const PartitionedInstance& inst, std::size_t cap) {
  require(inst.m() >= 1, ErrorCode::kEmptyInstance, "empty instance");
  require(inst.n() + inst.ell() <= cap && inst.n() < 63, ErrorCode::kPrecondition,
          "n + ell = " + std::to_string(inst.n() + inst.ell()) +
              " exceeds the brute-force cap");
  const std::size_t n = inst.n();
  std::vector<std::vector<Vertex>> sets;
  sets.reserve(inst.m());
  for (const PartConstraint& c : inst.constraints()) sets.push_back({c.u, c.v});
  const auto occ = occurrences(n, sets);

  std::vector<Sign> x(n, -1);
  std::vector<int> term(inst.m());
  std::vector<std::int64_t> b(inst.ell(), 0);
  for (std::size_t i = 0; i < inst.m(); ++i) {
    const PartConstraint& c = inst.constraints()[i];
    term[i] = c.sign * x[c.u] * x[c.v];
    b[c.part] += term[i];
  }
  std::int64_t abs_sum = 0;
  for (std::int64_t v : b) abs_sum += std::abs(v);

  std::int64_t best = -1;
  std::vector<Sign> best_x;
  gray_enumerate(
      n,
      [&](std::size_t v) {
        x[v] = static_cast<Sign>(-x[v]);
        for (std::uint32_t i : occ[v]) {
          const std::uint32_t part = inst.constraints()[i].part;
          abs_sum -= std::abs(b[part]);
          b[part] -= 2 * term[i];
          abs_sum += std::abs(b[part]);
          term[i] = -term[i];
        }
      },
      [&] {
        if (abs_sum > best || (abs_sum == best && x < best_x)) {
          best = abs_sum;
          best_x = x;
        }
      });

  Assignment a{best_x, std::vector<Sign>(inst.ell(), -1)};
  std::vector<std::int64_t> sums(inst.ell(), 0);
  for (const PartConstraint& c : inst.constraints()) sums[c.part] += c.sign * a.x[c.u] * a.x[c.v];
  for (std::size_t i = 0; i < sums.size(); ++i) a.y[i] = sums[i] > 0 ? 1 : -1;
  const auto m = static_cast<std::int64_t>(inst.m());
  return {{static_cast<std::uint64_t>((m + best) / 2), inst.m()}, std::move(a)};
}

double brute_force_inf1(const SparseMat& m, std::size_t cap) {
  const bool rows_small = m.rows() <= m.cols();
  const std::size_t k = rows_small ? m.rows() : m.cols();
  require(k <= cap && k < 63, ErrorCode::kPrecondition,
          "matrix too large for brute-force inf->1 enumeration");
  const std::size_t other = rows_small ? m.cols() : m.rows();
  // line[s] holds the entries of column (or row) s of the other side.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> by_small(k);
  for (const Triplet& t : m.entries()) {
    if (rows_small) {
      by_small[t.row].push_back({t.col, t.value});
    } else {
      by_small[t.col].push_back({t.row, t.value});
    }
  }
  std::vector<double> acc(other, 0.0);
  std::vector<Sign> x(k, -1);
  for (std::size_t s = 0; s < k; ++s) {
    for (const auto& [o, v] : by_small[s]) acc[o] -= v;
  }
  double best = -std::numeric_limits<double>::infinity();
  gray_enumerate(
      k,
      [&](std::size_t s) {
        x[s] = static_cast<Sign>(-x[s]);
        for (const auto& [o, v] : by_small[s]) acc[o] += 2.0 * x[s] * v;
      },
      [&] {
        double total = 0.0;
        for (double a : acc) total += std::abs(a);
        best = std::max(best, total);
      });
  return std::max(best, 0.0);
}

}  // namespace xorcert

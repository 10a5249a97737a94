#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace xorcert {

using Vertex = std::uint32_t;
using Sign = std::int8_t;

/// A k-XOR parity constraint: prod_{v in vars} x_v == sign.
struct Clause {
  std::vector<Vertex> vars;  // sorted ascending, distinct
  Sign sign = 1;

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// k-XOR instance over n variables; the clause list is a multiset.
class KXorInstance {
 public:
  /// Validates every clause and sorts its variables.
  KXorInstance(std::size_t n, std::size_t k, std::vector<Clause> clauses);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t m() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  friend bool operator==(const KXorInstance&, const KXorInstance&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<Clause> clauses_;
};

/// One partitioned 2-XOR constraint x_u x_v y_part == sign, with u < v.
struct PartConstraint {
  std::uint32_t part = 0;
  Vertex u = 0;
  Vertex v = 0;
  Sign sign = 1;

  friend bool operator==(const PartConstraint&, const PartConstraint&) = default;
};

class PartitionedInstance {
 public:
  /// Validates every constraint and orders each pair so that u < v.
  PartitionedInstance(std::size_t n, std::size_t ell,
                      std::vector<PartConstraint> constraints);

  std::size_t n() const noexcept { return n_; }
  std::size_t ell() const noexcept { return ell_; }
  std::size_t m() const noexcept { return constraints_.size(); }
  const std::vector<PartConstraint>& constraints() const noexcept {
    return constraints_;
  }

  friend bool operator==(const PartitionedInstance&,
                         const PartitionedInstance&) = default;

 private:
  std::size_t n_;
  std::size_t ell_;
  std::vector<PartConstraint> constraints_;
};

/// Boolean assignment; y is only used for partitioned instances.
struct Assignment {
  std::vector<Sign> x;
  std::vector<Sign> y;
};

/// Exact satisfied fraction satisfied / total.
struct Fraction {
  std::uint64_t satisfied = 0;
  std::uint64_t total = 0;

  double value() const noexcept {
    return static_cast<double>(satisfied) / static_cast<double>(total);
  }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Exact bias numerator / denominator, equal to 2 * eval - 1.
struct Bias {
  std::int64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

Fraction eval_kxor(const KXorInstance& inst, const Assignment& a);
Fraction eval_partitioned(const PartitionedInstance& inst, const Assignment& a);

Bias bias(const Fraction& f);
inline Bias bias(const KXorInstance& inst, const Assignment& a) {
  return bias(eval_kxor(inst, a));
}
inline Bias bias(const PartitionedInstance& inst, const Assignment& a) {
  return bias(eval_partitioned(inst, a));
}

/// Aggregated edge of one part: mu = sum of signs over `dup` copies.
struct EdgeAggregate {
  Vertex u = 0;
  Vertex v = 0;
  std::int64_t mu = 0;
  std::uint32_t dup = 0;
};

/// Per-part statistics of a nonempty part.
struct PartProfile {
  std::uint32_t original_part = 0;
  std::uint64_t t = 0;
  std::vector<std::pair<Vertex, std::uint32_t>> degree;  // sorted by vertex
  std::vector<EdgeAggregate> edges;                      // sorted by (u, v)

  std::uint32_t deg(Vertex v) const;
  std::uint32_t dup(Vertex a, Vertex b) const;
};

/// Degrees deg_i(v), part sizes t_i and multiplicities D_i(u, v). Empty
/// parts are dropped; parts[i].original_part records the index remap.
struct DegreeProfile {
  std::size_t n = 0;
  std::size_t original_ell = 0;
  std::uint64_t m = 0;
  std::vector<PartProfile> parts;

  std::size_t ell() const noexcept { return parts.size(); }
  std::uint32_t max_degree() const;
};

DegreeProfile degree_profile(const PartitionedInstance& inst);

}  // namespace xorcert

#include "xorcert/instance.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "xorcert/error.hpp"

namespace xorcert {

namespace {

void check_sign(Sign s) {
  require(s == 1 || s == -1, ErrorCode::kInvalidArgument,
          "constraint sign must be +1 or -1");
}

void check_assignment_entries(std::span<const Sign> values) {
  for (Sign s : values) {
    require(s == 1 || s == -1, ErrorCode::kInvalidArgument,
            "assignment entries must be +1 or -1");
  }
}

}  // namespace

KXorInstance::KXorInstance(std::size_t n, std::size_t k,
                           std::vector<Clause> clauses)
    : n_(n), k_(k), clauses_(std::move(clauses)) {
  require(n_ >= 1, ErrorCode::kInvalidArgument, "variable count must be positive");
  require(k_ >= 2, ErrorCode::kInvalidArgument, "arity must be at least 2");
  for (Clause& c : clauses_) {
    require(c.vars.size() == k_, ErrorCode::kInvalidArgument,
            "clause has " + std::to_string(c.vars.size()) +
                " variables, expected " + std::to_string(k_));
    std::sort(c.vars.begin(), c.vars.end());
    require(std::adjacent_find(c.vars.begin(), c.vars.end()) == c.vars.end(),
            ErrorCode::kInvalidArgument, "clause variables must be distinct");
    require(c.vars.back() < n_, ErrorCode::kInvalidArgument,
            "clause variable out of range");
    check_sign(c.sign);
  }
}

PartitionedInstance::PartitionedInstance(std::size_t n, std::size_t ell,
                                         std::vector<PartConstraint> constraints)
    : n_(n), ell_(ell), constraints_(std::move(constraints)) {
  require(n_ >= 1, ErrorCode::kInvalidArgument, "variable count must be positive");
  require(ell_ >= 1, ErrorCode::kInvalidArgument, "part count must be positive");
  for (PartConstraint& c : constraints_) {
    require(c.part < ell_, ErrorCode::kInvalidArgument, "part index out of range");
    require(c.u != c.v, ErrorCode::kInvalidArgument,
            "pair endpoints must be distinct");
    if (c.u > c.v) std::swap(c.u, c.v);
    require(c.v < n_, ErrorCode::kInvalidArgument, "pair endpoint out of range");
    check_sign(c.sign);
  }
}

Fraction eval_kxor(const KXorInstance& inst, const Assignment& a) {
  require(a.x.size() == inst.n(), ErrorCode::kDimensionMismatch,
          "assignment length " + std::to_string(a.x.size()) +
              " does not match n = " + std::to_string(inst.n()));
  require(inst.m() >= 1, ErrorCode::kEmptyInstance, "empty instance");
  check_assignment_entries(a.x);
  std::uint64_t satisfied = 0;
  for (const Clause& c : inst.clauses()) {
    int prod = c.sign;
    for (Vertex v : c.vars) prod *= a.x[v];
    satisfied += prod == 1;
  }
  return {satisfied, inst.m()};
}

Fraction eval_partitioned(const PartitionedInstance& inst, const Assignment& a) {
  require(a.x.size() == inst.n(), ErrorCode::kDimensionMismatch,
          "x has length " + std::to_string(a.x.size()) + ", expected " +
              std::to_string(inst.n()));
  require(a.y.size() == inst.ell(), ErrorCode::kDimensionMismatch,
          "y has length " + std::to_string(a.y.size()) + ", expected " +
              std::to_string(inst.ell()));
  require(inst.m() >= 1, ErrorCode::kEmptyInstance, "empty instance");
  check_assignment_entries(a.x);
  check_assignment_entries(a.y);
  std::uint64_t satisfied = 0;
  for (const PartConstraint& c : inst.constraints()) {
    satisfied += a.x[c.u] * a.x[c.v] * a.y[c.part] * c.sign == 1;
  }
  return {satisfied, inst.m()};
}

Bias bias(const Fraction& f) {
  return {2 * static_cast<std::int64_t>(f.satisfied) -
              static_cast<std::int64_t>(f.total),
          f.total};
}

std::uint32_t PartProfile::deg(Vertex v) const {
  auto it = std::lower_bound(
      degree.begin(), degree.end(), v,
      [](const std::pair<Vertex, std::uint32_t>& p, Vertex w) { return p.first < w; });
  return it != degree.end() && it->first == v ? it->second : 0;
}

std::uint32_t PartProfile::dup(Vertex a, Vertex b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{a, b},
                             [](const EdgeAggregate& e, std::pair<Vertex, Vertex> key) {
                               return std::pair{e.u, e.v} < key;
                             });
  return it != edges.end() && it->u == a && it->v == b ? it->dup : 0;
}

std::uint32_t DegreeProfile::max_degree() const {
  std::uint32_t best = 0;
  for (const PartProfile& p : parts) {
    for (const auto& [v, d] : p.degree) best = std::max(best, d);
  }
  return best;
}

DegreeProfile degree_profile(const PartitionedInstance& inst) {
  std::vector<std::map<std::pair<Vertex, Vertex>, EdgeAggregate>> by_part(inst.ell());
  std::vector<std::map<Vertex, std::uint32_t>> deg(inst.ell());
  std::vector<std::uint64_t> t(inst.ell(), 0);
  for (const PartConstraint& c : inst.constraints()) {
    EdgeAggregate& e = by_part[c.part][{c.u, c.v}];
    e.u = c.u;
    e.v = c.v;
    e.mu += c.sign;
    e.dup += 1;
    deg[c.part][c.u] += 1;
    deg[c.part][c.v] += 1;
    t[c.part] += 1;
  }

  DegreeProfile profile;
  profile.n = inst.n();
  profile.original_ell = inst.ell();
  profile.m = inst.m();
  for (std::size_t i = 0; i < inst.ell(); ++i) {
    if (t[i] == 0) continue;
    PartProfile part;
    part.original_part = static_cast<std::uint32_t>(i);
    part.t = t[i];
    part.degree.assign(deg[i].begin(), deg[i].end());
    part.edges.reserve(by_part[i].size());
    for (const auto& [key, e] : by_part[i]) part.edges.push_back(e);
    profile.parts.push_back(std::move(part));
  }
  return profile;
}

}  // namespace xorcert

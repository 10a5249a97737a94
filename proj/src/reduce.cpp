#include "xorcert/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "xorcert/error.hpp"

namespace xorcert {

ReducedInstance kxor_to_partitioned(const KXorInstance& inst) {
  const std::size_t k = inst.k();
  require(k >= 2, ErrorCode::kInvalidArgument, "reduction requires k >= 2");
  const bool odd = k % 2 == 1;
  const std::size_t half = odd ? (k - 1) / 2 : k / 2;
  const std::size_t skip = odd ? 1 : 0;

  auto halves = [&](const Clause& c) {
    std::vector<Vertex> first(c.vars.begin() + skip, c.vars.begin() + skip + half);
    std::vector<Vertex> second(c.vars.begin() + skip + half, c.vars.end());
    return std::pair{std::move(first), std::move(second)};
  };

  SubsetDictionary dict;
  dict.subset_size = half;
  std::map<std::vector<Vertex>, Vertex> ids;
  if (half == 1) {
    for (std::size_t v = 0; v < inst.n(); ++v) {
      dict.subsets.push_back({static_cast<Vertex>(v)});
      ids[{static_cast<Vertex>(v)}] = static_cast<Vertex>(v);
    }
  } else {
    for (const Clause& c : inst.clauses()) {
      auto [a, b] = halves(c);
      ids.emplace(std::move(a), 0);
      ids.emplace(std::move(b), 0);
    }
    Vertex next = 0;
    for (auto& [subset, id] : ids) {
      id = next++;
      dict.subsets.push_back(subset);
    }
  }

  std::vector<PartConstraint> constraints;
  constraints.reserve(inst.m());
  for (const Clause& c : inst.clauses()) {
    auto [a, b] = halves(c);
    const std::uint32_t part = odd ? c.vars.front() : 0;
    constraints.push_back({part, ids.at(a), ids.at(b), c.sign});
  }
  const std::size_t n_reduced = std::max<std::size_t>(dict.subsets.size(), 2);
  const std::size_t ell = odd ? inst.n() : 1;
  return {PartitionedInstance(n_reduced, ell, std::move(constraints)), std::move(dict), odd};
}

Assignment lift_assignment(const ReducedInstance& reduced, const Assignment& a) {
  Assignment out;
  out.x.assign(reduced.instance.n(), 1);
  for (std::size_t id = 0; id < reduced.dictionary.subsets.size(); ++id) {
    Sign s = 1;
    for (Vertex v : reduced.dictionary.subsets[id]) {
      require(v < a.x.size(), ErrorCode::kDimensionMismatch,
              "assignment shorter than the dictionary requires");
      s = static_cast<Sign>(s * a.x[v]);
    }
    out.x[id] = s;
  }
  if (reduced.odd_arity) {
    out.y = a.x;
  } else {
    out.y.assign(1, 1);
  }
  return out;
}

std::uint32_t degree_cap(double eps, double c_split) {
  require(eps > 0.0 && eps < 0.5, ErrorCode::kInvalidArgument, "eps must lie in (0, 1/2)");
  require(c_split > 0.0, ErrorCode::kInvalidArgument, "c_split must be positive");
  // The relative guard keeps exact ratios such as 4 / 0.1^2 from rounding up.
  const double raw = c_split / (eps * eps);
  return static_cast<std::uint32_t>(std::max(1.0, std::ceil(raw * (1.0 - 1e-12))));
}

Decomposition decompose(const PartitionedInstance& inst, double eps, double c_split) {
  const std::uint32_t cap = degree_cap(eps, c_split);
  const auto& cs = inst.constraints();

  using Key = std::pair<std::uint32_t, Vertex>;
  std::map<Key, std::vector<std::uint32_t>> incident;
  for (std::uint32_t idx = 0; idx < cs.size(); ++idx) {
    incident[{cs[idx].part, cs[idx].u}].push_back(idx);
    incident[{cs[idx].part, cs[idx].v}].push_back(idx);
  }
  std::map<Key, std::uint32_t> degree;
  for (const auto& [key, list] : incident) degree[key] = static_cast<std::uint32_t>(list.size());

  std::vector<bool> moved(cs.size(), false);
  std::vector<Provenance> provenance(cs.size());
  BipartiteInstance heavy;
  heavy.n_right = inst.n();

  // Removing a group only lowers degrees, so keys already passed stay below
  // the cap and one lexicographic pass equals restarting after each removal.
  for (auto& [key, list] : incident) {
    if (degree[key] < cap) continue;
    const auto label = static_cast<std::uint32_t>(heavy.left.size());
    heavy.left.push_back({key.first, key.second});
    for (std::uint32_t idx : list) {
      if (moved[idx]) continue;
      moved[idx] = true;
      const PartConstraint& c = cs[idx];
      const Vertex other = c.u == key.second ? c.v : c.u;
      degree[{c.part, c.u}] -= 1;
      degree[{c.part, c.v}] -= 1;
      provenance[idx] = {Side::kHeavy, label, static_cast<std::uint32_t>(heavy.constraints.size())};
      heavy.constraints.push_back({label, other, c.sign});
    }
  }

  std::vector<PartConstraint> light;
  for (std::uint32_t idx = 0; idx < cs.size(); ++idx) {
    if (moved[idx]) continue;
    provenance[idx] = {Side::kLight, Provenance::kNoGroup, static_cast<std::uint32_t>(light.size())};
    light.push_back(cs[idx]);
  }
  return {PartitionedInstance(inst.n(), inst.ell(), std::move(light)), std::move(heavy),
          std::move(provenance), cap};
}

PartitionedInstance heavy_subinstance(const PartitionedInstance& original,
                                      const Decomposition& dec) {
  require(dec.provenance.size() == original.m(), ErrorCode::kDimensionMismatch,
          "decomposition does not belong to this instance");
  std::vector<PartConstraint> out;
  for (std::size_t idx = 0; idx < original.m(); ++idx) {
    if (dec.provenance[idx].side == Side::kHeavy) out.push_back(original.constraints()[idx]);
  }
  return PartitionedInstance(original.n(), original.ell(), std::move(out));
}

KXorInstance bipartite_as_2xor(const BipartiteInstance& heavy) {
  const std::size_t offset = heavy.left.size();
  std::vector<Clause> clauses;
  clauses.reserve(heavy.m());
  for (const BipartiteConstraint& c : heavy.constraints) {
    clauses.push_back({{c.left, static_cast<Vertex>(offset + c.right)}, c.sign});
  }
  return KXorInstance(offset + heavy.n_right, 2, std::move(clauses));
}

Assignment lift_heavy_assignment(const BipartiteInstance& heavy, const Assignment& a) {
  require(a.x.size() == heavy.n_right, ErrorCode::kDimensionMismatch,
          "x does not match the right vertex count");
  Assignment out;
  out.x.reserve(heavy.left.size() + heavy.n_right);
  for (const HeavyLabel& label : heavy.left) {
    require(label.part < a.y.size(), ErrorCode::kDimensionMismatch, "y too short");
    out.x.push_back(static_cast<Sign>(a.y[label.part] * a.x[label.center]));
  }
  out.x.insert(out.x.end(), a.x.begin(), a.x.end());
  return out;
}

}  // namespace xorcert

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "xorcert/instance.hpp"

namespace xorcert {

/// Distinct variable subsets used as the vertices of a reduced instance.
/// Singletons map to the identity dictionary {0}, {1}, ..., {n-1}; larger
/// subsets are numbered in lexicographic order of the subsets actually used.
struct SubsetDictionary {
  std::size_t subset_size = 1;
  std::vector<std::vector<Vertex>> subsets;
};

struct ReducedInstance {
  PartitionedInstance instance;
  SubsetDictionary dictionary;
  bool odd_arity = false;
};

/// k-XOR -> partitioned 2-XOR. Odd k: the minimum vertex of each clause
/// names the part (ell = n) and the remaining k-1 sorted vertices split into
/// their first (k-1)/2 and the rest. Even k: ell = 1 and the sorted clause
/// splits into halves. Signs are copied unchanged.
ReducedInstance kxor_to_partitioned(const KXorInstance& inst);

/// Assignment of the reduced instance induced by x: x'_S = prod_{v in S} x_v,
/// y = x for odd arity and y = (+1) otherwise. Preserves the satisfied count.
Assignment lift_assignment(const ReducedInstance& reduced, const Assignment& a);

/// Left vertex (i, v) of the heavy bipartite instance.
struct HeavyLabel {
  std::uint32_t part = 0;
  Vertex center = 0;
  friend bool operator==(const HeavyLabel&, const HeavyLabel&) = default;
};

struct BipartiteConstraint {
  std::uint32_t left = 0;  // index into BipartiteInstance::left
  Vertex right = 0;
  Sign sign = 1;
};

/// 2-XOR instance between heavy labels X and the original vertex set.
struct BipartiteInstance {
  std::vector<HeavyLabel> left;
  std::size_t n_right = 0;
  std::vector<BipartiteConstraint> constraints;

  std::size_t m() const noexcept { return constraints.size(); }
};

enum class Side : std::uint8_t { kLight, kHeavy };

struct Provenance {
  static constexpr std::uint32_t kNoGroup = std::numeric_limits<std::uint32_t>::max();
  Side side = Side::kLight;
  std::uint32_t group = kNoGroup;  // heavy label index for heavy constraints
  std::uint32_t index = 0;         // position within the light or heavy list
};

struct Decomposition {
  PartitionedInstance light;
  BipartiteInstance heavy;
  std::vector<Provenance> provenance;  // one entry per original constraint
  std::uint32_t d_cap = 0;

  std::size_t m_light() const noexcept { return light.m(); }
  std::size_t m_heavy() const noexcept { return heavy.m(); }
};

/// ceil(c_split / eps^2), the per-(part, vertex) degree at which a group
/// moves to the heavy side.
std::uint32_t degree_cap(double eps, double c_split);

/// Heavy/light split: visiting (part, vertex) keys in lexicographic order,
/// every group whose current light degree reaches d_cap moves to the heavy
/// side as bipartite constraints ((part, vertex), other endpoint).
Decomposition decompose(const PartitionedInstance& inst, double eps, double c_split);

/// The heavy constraints of `original` as a partitioned instance (same n, ell).
PartitionedInstance heavy_subinstance(const PartitionedInstance& original,
                                      const Decomposition& dec);

/// The bipartite instance as a plain 2-XOR: left label j is variable j and
/// right vertex u is variable |X| + u.
KXorInstance bipartite_as_2xor(const BipartiteInstance& heavy);

/// x'_{(i,v)} = y_i x_v on the left, x'_u = x_u on the right.
Assignment lift_heavy_assignment(const BipartiteInstance& heavy, const Assignment& a);

}  // namespace xorcert

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "xorcert/instance.hpp"

namespace xorcert {

enum class Target { kKXor, kPartitioned };

/// Instance generator families.
///  random       fully random: hypergraph and signs both drawn from `seed`.
///  semi-random  hypergraph drawn from `graph_seed`, signs from `seed`.
///  star         every clause contains vertex 0.
///  cluster      every clause lies inside the first `cluster_size` vertices.
///  heavy-group  `groups` planted groups of `group_size` clauses sharing one
///               (part, vertex) after reduction, plus random background.
/// For every family except `random`, the hypergraph depends only on
/// `graph_seed`; `seed` only drives the signs.
struct GenSpec {
  std::string family = "random";
  Target target = Target::kKXor;
  std::size_t n = 0;
  std::size_t k_or_ell = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::uint64_t graph_seed = 0;
  std::size_t group_size = 8;
  std::size_t groups = 1;
  std::size_t cluster_size = 0;  // 0 picks max(k + 1, n / 3)
};

const std::vector<std::string>& generator_families();

KXorInstance gen_random_kxor(const GenSpec& spec);
KXorInstance gen_adversarial_hypergraph(const GenSpec& spec);
PartitionedInstance gen_partitioned(const GenSpec& spec);

using AnyInstance = std::variant<KXorInstance, PartitionedInstance>;

/// Dispatches on spec.family and spec.target.
AnyInstance generate(const GenSpec& spec);

}  // namespace xorcert

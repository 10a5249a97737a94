#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "oracles.hpp"
#include "xorcert/error.hpp"
#include "xorcert/generate.hpp"
#include "xorcert/oracle.hpp"
#include "xorcert/reduce.hpp"
#include "xorcert/rng.hpp"

using namespace xorcert;

namespace {

using Key = std::tuple<std::uint32_t, Vertex, Vertex, int>;

std::map<Key, int> multiset(const PartitionedInstance& inst) {
  std::map<Key, int> out;
  for (const auto& c : inst.constraints()) ++out[{c.part, c.u, c.v, c.sign}];
  return out;
}

// Pulls every constraint back through provenance and rebuilds the original.
std::map<Key, int> pullback(const Decomposition& dec) {
  std::map<Key, int> out;
  for (const auto& p : dec.provenance) {
    if (p.side == Side::kLight) {
      const auto& c = dec.light.constraints()[p.index];
      ++out[{c.part, c.u, c.v, c.sign}];
    } else {
      const auto& c = dec.heavy.constraints[p.index];
      const auto& label = dec.heavy.left[c.left];
      CHECK(c.left == p.group);
      const Vertex a = std::min(label.center, c.right);
      const Vertex b = std::max(label.center, c.right);
      ++out[{label.part, a, b, c.sign}];
    }
  }
  return out;
}

PartitionedInstance random_partitioned(std::size_t n, std::size_t ell, std::size_t m,
                                       std::uint64_t seed, const std::string& family = "random") {
  GenSpec spec;
  spec.family = family;
  spec.target = Target::kPartitioned;
  spec.n = n;
  spec.k_or_ell = ell;
  spec.m = m;
  spec.seed = seed;
  spec.graph_seed = seed + 100;
  spec.group_size = 6;
  spec.groups = 2;
  return std::get<PartitionedInstance>(generate(spec));
}

void check_decomposition(const PartitionedInstance& inst, const Decomposition& dec) {
  CHECK(dec.m_light() + dec.m_heavy() == inst.m());
  CHECK(multiset(inst) == pullback(dec));
  for (const auto& part : degree_profile(dec.light).parts) {
    for (const auto& [v, d] : part.degree) CHECK(d < dec.d_cap);
  }
  CHECK(dec.heavy.left.size() * dec.d_cap <= dec.m_heavy());
}

}  // namespace

TEST_SUITE("reduce") {

TEST_CASE("odd arity splits off the minimum vertex") {
  KXorInstance inst(3, 3, {{{0, 1, 2}, 1}});
  const auto r = kxor_to_partitioned(inst);
  CHECK(r.odd_arity);
  CHECK(r.instance.ell() == 3);
  REQUIRE(r.instance.m() == 1);
  const auto& c = r.instance.constraints()[0];
  CHECK(c.part == 0);
  CHECK(r.dictionary.subsets[c.u] == std::vector<Vertex>{1});
  CHECK(r.dictionary.subsets[c.v] == std::vector<Vertex>{2});
  CHECK(c.sign == 1);
}

TEST_CASE("2-xor reduces to one part with the identity dictionary") {
  KXorInstance inst(4, 2, {{{0, 3}, -1}, {{1, 2}, 1}});
  const auto r = kxor_to_partitioned(inst);
  CHECK(!r.odd_arity);
  CHECK(r.instance.ell() == 1);
  CHECK(r.instance.n() == 4);
  CHECK(r.dictionary.subset_size == 1);
  for (std::size_t v = 0; v < 4; ++v) CHECK(r.dictionary.subsets[v] == std::vector<Vertex>{static_cast<Vertex>(v)});
  CHECK(r.instance.constraints()[0] == PartConstraint{0, 0, 3, -1});
}

TEST_CASE("5-xor dictionary holds pairs in lexicographic order") {
  KXorInstance inst(6, 5, {{{0, 1, 2, 3, 4}, 1}, {{1, 2, 3, 4, 5}, -1}});
  const auto r = kxor_to_partitioned(inst);
  CHECK(r.dictionary.subset_size == 2);
  CHECK(std::is_sorted(r.dictionary.subsets.begin(), r.dictionary.subsets.end()));
  CHECK(r.dictionary.subsets.size() == 4);
}

TEST_CASE("reduction preserves the satisfied count of lifted assignments") {
  for (std::size_t k : {3u, 4u, 5u}) {
    GenSpec spec;
    spec.n = 8;
    spec.k_or_ell = k;
    spec.m = 60;
    spec.seed = 10 + k;
    const auto inst = gen_random_kxor(spec);
    const auto r = kxor_to_partitioned(inst);
    Xoshiro256 rng(k);
    for (int trial = 0; trial < 20; ++trial) {
      Assignment a;
      for (int i = 0; i < 8; ++i) a.x.push_back(rng.sign());
      CHECK(eval_partitioned(r.instance, lift_assignment(r, a)).satisfied ==
            eval_kxor(inst, a).satisfied);
    }
  }
}

TEST_CASE("val of the reduction dominates val of the input") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    GenSpec spec;
    spec.n = 8;
    spec.k_or_ell = 3;
    spec.m = 60;
    spec.seed = seed;
    const auto inst = gen_random_kxor(spec);
    const auto r = kxor_to_partitioned(inst);
    CHECK(oracle::naive_max_satisfied(r.instance) >= oracle::naive_max_satisfied(inst));
  }
}

TEST_CASE("degree cap") {
  CHECK(degree_cap(0.25, 4.0) == 64);
  CHECK(degree_cap(0.25, 2.0) == 32);
  CHECK(degree_cap(0.45, 2.0) == 10);
  CHECK(degree_cap(0.3, 1.0) == 12);
  CHECK_THROWS_AS(degree_cap(0.5, 2.0), Error);
}

TEST_CASE("low degree instance stays light") {
  const auto inst = random_partitioned(10, 4, 30, 1);
  const auto dec = decompose(inst, 0.25, 4.0);
  CHECK(dec.m_heavy() == 0);
  CHECK(dec.light == inst);
}

TEST_CASE("star part moves entirely to the heavy side") {
  const std::uint32_t d_cap = degree_cap(0.45, 2.0);
  std::vector<PartConstraint> cs;
  for (std::uint32_t j = 0; j < 2 * d_cap; ++j) cs.push_back({0, 0, 1 + j % 20, static_cast<Sign>(j % 3 ? 1 : -1)});
  PartitionedInstance inst(21, 1, cs);
  const auto dec = decompose(inst, 0.45, 2.0);
  CHECK(dec.m_light() == 0);
  CHECK(dec.m_heavy() == 2 * d_cap);
  REQUIRE(dec.heavy.left.size() == 1);
  CHECK(dec.heavy.left[0] == HeavyLabel{0, 0});
  check_decomposition(inst, dec);
}

TEST_CASE("decomposition invariants on random and adversarial instances") {
  for (const std::string family : {"random", "star", "cluster", "heavy-group"}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto inst = random_partitioned(8, 3, 120, seed, family);
      for (double eps : {0.2, 0.3, 0.45}) check_decomposition(inst, decompose(inst, eps, 2.0));
    }
  }
}

TEST_CASE("heavy relaxation dominates the heavy sub-instance") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto inst = random_partitioned(5, 2, 40, seed, "heavy-group");
    const auto dec = decompose(inst, 0.45, 1.0);
    REQUIRE(dec.m_heavy() > 0);
    const auto sub = heavy_subinstance(inst, dec);
    const auto as2 = bipartite_as_2xor(dec.heavy);
    CHECK(oracle::naive_max_satisfied(as2) >= oracle::naive_max_satisfied(sub));
    // Pointwise: lifting any (x, y) keeps the satisfied count.
    for (std::uint64_t mask = 0; mask < (1u << 7); ++mask) {
      Assignment a;
      for (int i = 0; i < 5; ++i) a.x.push_back(oracle::bit_sign(mask, i));
      for (int i = 0; i < 2; ++i) a.y.push_back(oracle::bit_sign(mask, 5 + i));
      CHECK(eval_kxor(as2, lift_heavy_assignment(dec.heavy, a)).satisfied ==
            eval_partitioned(sub, a).satisfied);
    }
  }
}

TEST_CASE("empty heavy side") {
  const auto inst = random_partitioned(6, 2, 10, 3);
  const auto dec = decompose(inst, 0.25, 4.0);
  CHECK(dec.m_heavy() == 0);
  CHECK(heavy_subinstance(inst, dec).m() == 0);
}

}

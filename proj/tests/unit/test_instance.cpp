#include "doctest.h"

#include <numeric>

#include "oracles.hpp"
#include "xorcert/error.hpp"
#include "xorcert/generate.hpp"
#include "xorcert/instance.hpp"
#include "xorcert/oracle.hpp"
#include "xorcert/rng.hpp"

using namespace xorcert;

namespace {

Assignment random_assignment(Xoshiro256& rng, std::size_t n, std::size_t ell) {
  Assignment a;
  for (std::size_t i = 0; i < n; ++i) a.x.push_back(rng.sign());
  for (std::size_t i = 0; i < ell; ++i) a.y.push_back(rng.sign());
  return a;
}

// Second evaluator, written independently of eval_kxor.
std::uint64_t recount(const KXorInstance& inst, const Assignment& a) {
  std::uint64_t sat = 0;
  for (const auto& c : inst.clauses()) {
    int neg = 0;
    for (auto v : c.vars) neg += a.x[v] < 0;
    const int p = (neg % 2 == 0) ? 1 : -1;
    sat += p == c.sign;
  }
  return sat;
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("single 3-xor clause") {
  KXorInstance inst(3, 3, {{{0, 1, 2}, 1}});
  CHECK(eval_kxor(inst, {{1, 1, 1}, {}}).value() == 1.0);
  CHECK(eval_kxor(inst, {{-1, 1, 1}, {}}).value() == 0.0);
}

TEST_CASE("clause variables are sorted") {
  KXorInstance inst(5, 3, {{{4, 0, 2}, -1}});
  CHECK(inst.clauses()[0].vars == std::vector<Vertex>{0, 2, 4});
}

TEST_CASE("invalid instances are rejected") {
  CHECK_THROWS_AS(KXorInstance(3, 3, {{{0, 1, 1}, 1}}), Error);
  CHECK_THROWS_AS(KXorInstance(3, 3, {{{0, 1, 3}, 1}}), Error);
  CHECK_THROWS_AS(KXorInstance(3, 3, {{{0, 1}, 1}}), Error);
  CHECK_THROWS_AS(KXorInstance(3, 3, {{{0, 1, 2}, 0}}), Error);
  CHECK_THROWS_AS(PartitionedInstance(3, 1, {{0, 1, 1, 1}}), Error);
  CHECK_THROWS_AS(PartitionedInstance(3, 1, {{1, 0, 1, 1}}), Error);
  CHECK_THROWS_AS(PartitionedInstance(3, 1, {{0, 0, 3, 1}}), Error);
}

TEST_CASE("random 3-xor matches independent recount") {
  GenSpec spec;
  spec.n = 8;
  spec.k_or_ell = 3;
  spec.m = 40;
  spec.seed = 7;
  const auto inst = gen_random_kxor(spec);
  Xoshiro256 rng(99);
  for (int trial = 0; trial < 64; ++trial) {
    const auto a = random_assignment(rng, 8, 0);
    const auto f = eval_kxor(inst, a);
    CHECK(f.total == 40);
    CHECK(f.satisfied == recount(inst, a));
  }
}

TEST_CASE("partitioned evaluation") {
  PartitionedInstance inst(2, 1, {{0, 0, 1, 1}});
  CHECK(eval_partitioned(inst, {{1, 1}, {1}}).value() == 1.0);
  CHECK(eval_partitioned(inst, {{1, 1}, {-1}}).value() == 0.0);
}

TEST_CASE("partitioned max over all assignments equals oracle") {
  GenSpec spec;
  spec.target = Target::kPartitioned;
  spec.n = 6;
  spec.k_or_ell = 3;
  spec.m = 20;
  spec.seed = 11;
  const auto inst = std::get<PartitionedInstance>(generate(spec));
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
    Assignment a;
    for (std::size_t i = 0; i < 6; ++i) a.x.push_back(oracle::bit_sign(mask, i));
    for (std::size_t i = 0; i < 3; ++i) a.y.push_back(oracle::bit_sign(mask, 6 + i));
    best = std::max(best, eval_partitioned(inst, a).satisfied);
  }
  CHECK(best == brute_force_val(inst).val.satisfied);
}

TEST_CASE("bias identity") {
  CHECK(bias(Fraction{3, 3}).value() == 1.0);
  CHECK(bias(Fraction{2, 4}).value() == 0.0);
  GenSpec spec;
  spec.n = 9;
  spec.k_or_ell = 3;
  spec.m = 33;
  spec.seed = 2;
  const auto inst = gen_random_kxor(spec);
  Xoshiro256 rng(5);
  for (int trial = 0; trial < 32; ++trial) {
    const auto f = eval_kxor(inst, random_assignment(rng, 9, 0));
    const auto b = bias(f);
    CHECK(b.denominator == f.total);
    CHECK(b.numerator == 2 * static_cast<std::int64_t>(f.satisfied) - static_cast<std::int64_t>(f.total));
    CHECK(f.value() >= 0.0);
    CHECK(f.value() <= 1.0);
  }
}

TEST_CASE("duplicated constraints count twice") {
  PartitionedInstance one(3, 1, {{0, 0, 1, 1}, {0, 1, 2, -1}});
  PartitionedInstance two(3, 1, {{0, 0, 1, 1}, {0, 0, 1, 1}, {0, 1, 2, -1}, {0, 1, 2, -1}});
  Xoshiro256 rng(1);
  for (int trial = 0; trial < 16; ++trial) {
    const auto a = random_assignment(rng, 3, 1);
    CHECK(eval_partitioned(one, a).value() == eval_partitioned(two, a).value());
  }
}

TEST_CASE("degree profile by hand") {
  PartitionedInstance inst(3, 1, {{0, 0, 1, 1}, {0, 0, 2, 1}});
  const auto p = degree_profile(inst);
  REQUIRE(p.ell() == 1);
  CHECK(p.parts[0].deg(0) == 2);
  CHECK(p.parts[0].deg(1) == 1);
  CHECK(p.parts[0].deg(2) == 1);
  CHECK(p.parts[0].t == 2);

  PartitionedInstance dup(2, 1, {{0, 0, 1, 1}, {0, 0, 1, -1}});
  const auto q = degree_profile(dup);
  CHECK(q.parts[0].dup(0, 1) == 2);
  CHECK(q.parts[0].edges[0].mu == 0);
}

TEST_CASE("degree profile drops empty parts and recounts") {
  GenSpec spec;
  spec.target = Target::kPartitioned;
  spec.n = 12;
  spec.k_or_ell = 40;
  spec.m = 30;
  spec.seed = 4;
  const auto inst = std::get<PartitionedInstance>(generate(spec));
  const auto p = degree_profile(inst);
  CHECK(p.ell() < 40);
  std::uint64_t total = 0;
  for (const auto& part : p.parts) {
    CHECK(part.t > 0);
    std::uint64_t degsum = 0;
    for (const auto& [v, d] : part.degree) degsum += d;
    CHECK(degsum == 2 * part.t);
    std::uint64_t recount_t = 0;
    for (const auto& c : inst.constraints()) recount_t += c.part == part.original_part;
    CHECK(recount_t == part.t);
    total += part.t;
  }
  CHECK(total == inst.m());
}

}

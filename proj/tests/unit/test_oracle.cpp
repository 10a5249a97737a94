#include "doctest.h"

#include "oracles.hpp"
#include "xorcert/error.hpp"
#include "xorcert/generate.hpp"
#include "xorcert/oracle.hpp"
#include "xorcert/rng.hpp"

using namespace xorcert;

TEST_SUITE("oracle") {

TEST_CASE("single constraint is satisfiable") {
  KXorInstance inst(3, 3, {{{0, 1, 2}, -1}});
  const auto r = brute_force_val(inst);
  CHECK(r.val == Fraction{1, 1});
  CHECK(eval_kxor(inst, r.argmax).satisfied == 1);
  // Lexicographically smallest optimum with -1 first.
  CHECK(r.argmax.x == std::vector<Sign>{-1, -1, -1});
}

TEST_CASE("a constraint and its negation") {
  PartitionedInstance inst(2, 1, {{0, 0, 1, 1}, {0, 0, 1, -1}});
  CHECK(brute_force_val(inst).val == Fraction{1, 2});
}

TEST_CASE("matches the independent enumerator") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    GenSpec spec;
    spec.n = 6;
    spec.k_or_ell = 3;
    spec.m = 25;
    spec.seed = seed;
    const auto k = gen_random_kxor(spec);
    const auto rk = brute_force_val(k);
    CHECK(rk.val.satisfied == oracle::naive_max_satisfied(k));
    CHECK(eval_kxor(k, rk.argmax).satisfied == rk.val.satisfied);

    spec.target = Target::kPartitioned;
    const auto p = std::get<PartitionedInstance>(generate(spec));
    const auto rp = brute_force_val(p);
    CHECK(rp.val.satisfied == oracle::naive_max_satisfied(p));
    CHECK(eval_partitioned(p, rp.argmax).satisfied == rp.val.satisfied);
    CHECK(2 * rp.val.satisfied >= rp.val.total);
  }
}

TEST_CASE("cap is enforced") {
  KXorInstance big(25, 2, {{{0, 1}, 1}});
  CHECK_THROWS_AS(brute_force_val(big), Error);
  CHECK(brute_force_val(big, 25).val.satisfied == 1);
}

TEST_CASE("inf1 examples") {
  CHECK(brute_force_inf1(SparseMat(1, 1, {{0, 0, 1.0}})) == 1.0);
  std::vector<Triplet> ones;
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 5; ++j) ones.push_back({i, j, 1.0});
  CHECK(brute_force_inf1(SparseMat(3, 5, ones)) == 15.0);
}

TEST_CASE("inf1 matches naive double enumeration") {
  Xoshiro256 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Triplet> t;
    double max_abs = 0.0;
    for (std::uint32_t i = 0; i < 6; ++i) {
      for (std::uint32_t j = 0; j < 5; ++j) {
        const double v = rng.normal();
        t.push_back({i, j, v});
        max_abs = std::max(max_abs, std::abs(v));
      }
    }
    const SparseMat m(6, 5, t);
    const double b = brute_force_inf1(m);
    CHECK(b == doctest::Approx(oracle::naive_inf1(m)).epsilon(1e-12));
    CHECK(b >= max_abs);
    CHECK(b <= m.abs_sum() + 1e-12);
  }
}

}

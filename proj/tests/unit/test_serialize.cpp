#include "doctest.h"

#include "xorcert/config.hpp"
#include "xorcert/digest.hpp"
#include "xorcert/error.hpp"
#include "xorcert/generate.hpp"
#include "xorcert/reduce.hpp"
#include "xorcert/serialize.hpp"

using namespace xorcert;

TEST_SUITE("serialize") {

TEST_CASE("sha256 test vector") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("instance round trip") {
  GenSpec spec;
  spec.n = 9;
  spec.k_or_ell = 5;
  spec.m = 30;
  const auto k = gen_random_kxor(spec);
  const auto reduced = kxor_to_partitioned(k);
  const auto text = instance_to_json(reduced.instance, 2, &reduced.dictionary);
  const auto back = instance_from_json(text);
  CHECK(std::get<PartitionedInstance>(back.instance) == reduced.instance);
  REQUIRE(back.dictionary);
  CHECK(back.dictionary->subsets == reduced.dictionary.subsets);
  CHECK(instance_digest(back.instance) == instance_digest(reduced.instance));
  CHECK(std::get<KXorInstance>(instance_from_json(instance_to_json(k)).instance) == k);
  CHECK(instance_digest(k).size() == 64);
}

TEST_CASE("malformed instances") {
  CHECK_THROWS_AS(instance_from_json("{"), Error);
  CHECK_THROWS_AS(instance_from_json(R"({"kind":"kxor","n":3,"k":3,"constraints":[[0,1,2]]})"), Error);
  CHECK_THROWS_AS(instance_from_json(R"({"kind":"kxor","n":3,"k":3,"constraints":[[0,1,2,2]]})"), Error);
  CHECK_THROWS_AS(instance_from_json(R"({"kind":"what","n":3,"constraints":[]})"), Error);
  CHECK_THROWS_AS(instance_from_json(R"({"kind":"p2xor","n":3,"ell":1,"constraints":[[0,1,1,1]]})"), Error);
  const auto ok = instance_from_json(R"({"kind":"p2xor","n":3,"ell":2,"constraints":[[1,2,0,-1]]})");
  const auto& p = std::get<PartitionedInstance>(ok.instance);
  CHECK(p.constraints()[0] == PartConstraint{1, 0, 2, -1});
}

TEST_CASE("config json") {
  Config c;
  const auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  const auto partial = config_from_json(R"({"c_split": 8, "sdp_budget": 10})");
  CHECK(partial.c_split == 8.0);
  CHECK(partial.sdp_budget == 10);
  CHECK(partial.delta == 0.01);
  CHECK_THROWS_AS(config_from_json(R"({"c_splat": 8})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"delta": 2})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"delta": "x"})"), Error);
}

TEST_CASE("config set") {
  Config c;
  config_set(c, "c_alpha", "0.5");
  config_set(c, "dense_cap", "64");
  CHECK(c.c_alpha == 0.5);
  CHECK(c.dense_cap == 64);
  CHECK_THROWS_AS(config_set(c, "dense_cap", "1.5"), Error);
  CHECK_THROWS_AS(config_set(c, "nope", "1"), Error);
  CHECK(config_keys().size() == 9);
  c.soundness_slack = 0.0;
  CHECK_THROWS_AS(validate(c), Error);
}

}

#include <catch_amalgamated.hpp>

#include "hsc/errors.hpp"
#include "hsc/keys.hpp"
#include "support.hpp"

using namespace hsc;

TEST_CASE("toy key material matches the hand computation", "[keys][toy]") {
  test::ToyWorld w;
  CHECK(w.v(w.master.s) == 3);
  CHECK(w.v(w.params.master_public) == 3);
  CHECK(w.v(w.pki.private_key) == 5);
  CHECK(w.v(w.pki.public_key) == 8);
  CHECK(w.v(w.partial.commitment) == 2);
  CHECK(w.v(w.partial.partial) == 4);
  CHECK(w.v(w.clc.secret_value) == 6);
  CHECK(w.v(w.clc.public_value) == 6);
  CHECK(w.v(w.bound.gamma) == 5);
  CHECK(verify_partial_key(w.params, w.partial));
  CHECK(pki_keypair_consistent(w.params, w.pki));
  CHECK(clc_keypair_consistent(w.params, w.clc));
}

TEST_CASE("partial extraction redraws t when d would be zero", "[keys][toy]") {
  auto g = test::toy(13);
  ScriptedRandom rng(Bytes{3});
  auto base = setup(g, 8, 4, rng);
  auto oracle = std::make_shared<ScriptedOracle>(g, 1);
  // t = 11 gives d = 11 + 3*5 = 26 = 0 mod 13.
  oracle->script_h1(to_bytes("bob"), g->element(11), g->scalars().from_u64(5));
  oracle->script_h1(to_bytes("bob"), g->element(2), g->scalars().from_u64(5));
  auto params = base.params.with_oracles(oracle);
  rng.push(Bytes{11, 2});
  auto partial = clc_extract_partial(params, base.master, to_bytes("bob"), rng);
  CHECK(g->value_of(partial.commitment) == 2);
  CHECK(partial.partial.to_u64() == 4);
  CHECK(rng.remaining() == 0);
}

// Exhaustive over Z_101 with the real XOF oracles. The independent oracle
// for verify_partial_key is d == t' + H1(ID, T') * s evaluated in uint64.
TEST_CASE("partial-key verification is exact over toy-101", "[keys][toy][negative]") {
  const std::uint64_t q = 101;
  auto g = test::toy(q);
  SeededRandom rng(101);
  for (int round = 0; round < 5; ++round) {
    auto base = setup(g, 8, 4, rng);
    const auto& params = base.params;
    const std::uint64_t s = base.master.s.to_u64();
    auto partial = clc_extract_partial(params, base.master, to_bytes("carol"), rng);
    REQUIRE(verify_partial_key(params, partial));

    for (std::uint64_t d = 0; d < q; ++d) {
      ClcPartialKey forged = partial;
      forged.partial = g->scalars().from_u64(d);
      REQUIRE(verify_partial_key(params, forged) == (d == partial.partial.to_u64()));
    }
    for (std::uint64_t t = 0; t < q; ++t) {
      ClcPartialKey forged = partial;
      forged.commitment = g->element(t);
      std::uint64_t gamma = params.h().h1(forged.id, forged.commitment).to_u64();
      bool expect = partial.partial.to_u64() == (t + gamma * s) % q;
      REQUIRE(verify_partial_key(params, forged) == expect);
    }
    ClcPartialKey other_id = partial;
    other_id.id = to_bytes("mallory");
    std::uint64_t gamma = params.h().h1(other_id.id, other_id.commitment).to_u64();
    CHECK(verify_partial_key(params, other_id) ==
          (partial.partial.to_u64() == (g->value_of(partial.commitment) + gamma * s) % q));
  }
}

TEST_CASE("clc_finalize rejects exactly x_c = q - d over toy-101", "[keys][toy][negative]") {
  const std::uint64_t q = 101;
  auto g = test::toy(q);
  SeededRandom rng(5);
  auto base = setup(g, 8, 4, rng);
  auto partial = clc_extract_partial(base.params, base.master, to_bytes("dave"), rng);
  const std::uint64_t d = partial.partial.to_u64();
  for (std::uint64_t x = 1; x < q; ++x) {
    auto xc = g->scalars().from_u64(x);
    if (x == q - d) {
      REQUIRE_THROWS_AS(clc_finalize(base.params, partial, xc), DegenerateKeyError);
    } else {
      auto key = clc_finalize(base.params, partial, xc);
      REQUIRE(g->value_of(key.public_value) == x);
      REQUIRE(clc_keypair_consistent(base.params, key));
    }
  }
  CHECK_THROWS_AS(clc_finalize(base.params, partial, g->scalars().zero()), DomainError);

  // The rng overload skips the degenerate draw instead of failing.
  ScriptedRandom scripted(Bytes{static_cast<std::uint8_t>(q - d), 7});
  auto key = clc_finalize(base.params, partial, scripted);
  CHECK(key.secret_value.to_u64() == 7);
}

TEST_CASE("clc_finalize refuses an unverifiable partial key", "[keys][negative]") {
  SeededRandom rng(9);
  test::World w("P-256", rng);
  auto partial = clc_extract_partial(w.params, w.master, to_bytes("erin"), rng);
  ClcPartialKey forged = partial;
  forged.partial = w.params.zq().add(partial.partial, w.params.zq().from_u64(1));
  CHECK_THROWS_AS(clc_finalize(w.params, forged, rng), AuthenticityError);
  CHECK_THROWS_AS(clc_finalize(w.params, forged, w.params.zq().from_u64(5)), AuthenticityError);

  // A partial key issued under another master key does not verify either.
  auto other = setup(w.params.group, w.params.n_bits, w.params.l_bits, rng);
  auto foreign = clc_extract_partial(other.params, other.master, to_bytes("erin"), rng);
  CHECK_FALSE(verify_partial_key(w.params, foreign));
}

TEST_CASE("key consistency predicates", "[keys]") {
  SeededRandom rng(21);
  test::World w("P-256", rng);
  CHECK(pki_keypair_consistent(w.params, w.pki));
  CHECK(clc_keypair_consistent(w.params, w.clc));

  PkiKeyPair bad_pki = w.pki;
  bad_pki.public_key = w.params.g().mul_base(w.pki.private_key);  // x_p P instead of P / x_p
  CHECK_FALSE(pki_keypair_consistent(w.params, bad_pki));

  ClcKeyPair bad_clc = w.clc;
  bad_clc.public_value = w.params.g().generator();
  CHECK_FALSE(clc_keypair_consistent(w.params, bad_clc));
  bad_clc = w.clc;
  bad_clc.partial = w.params.zq().from_u64(1);
  CHECK_FALSE(clc_keypair_consistent(w.params, bad_clc));
}

TEST_CASE("setup and bound keys", "[keys]") {
  SeededRandom rng(1);
  auto g = make_group("P-256");
  CHECK_THROWS_AS(setup(g, 7, 128, rng), DomainError);
  CHECK_THROWS_AS(setup(g, 8, 0, rng), DomainError);
  auto r = setup(g, 800, 128, rng);
  CHECK(r.params.max_message_len() == 100);
  CHECK(g->equal(r.params.master_public, g->mul_base(r.master.s)));

  test::World w("P-256", rng);
  CHECK(w.bound.gamma == w.params.h().h1(w.clc.id, w.clc.commitment));
  CountingScope scope;
  (void)bind_clc_public_key(w.params, w.clc.public_part());
  CHECK(scope.counts() == OpCounter{0, 0, 1});
}

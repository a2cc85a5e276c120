// Shared fixtures for the test binaries.
#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "hsc/group.hpp"
#include "hsc/hashing.hpp"
#include "hsc/keys.hpp"
#include "hsc/random.hpp"
#include "hsc/signcryption.hpp"

namespace hsc::test {

inline std::shared_ptr<const ToyGroup> toy(std::uint64_t q) { return std::make_shared<const ToyGroup>(q); }

inline Bytes script_byte(std::uint8_t v) { return Bytes{v}; }

// Hand-checked world over Z_13 with P = 1:
//   s = 3 -> Ppub = 3, t = 2 -> T = 2, gamma = 5 -> d = t + s*gamma = 4,
//   x_c = 6 -> PK_c1 = 6, x_p = 5 -> PK_p = 1/5 = 8, k = 7, h = 9,
//   H3 mask 0b0110 over m = 0b1010.
struct ToyWorld {
  std::shared_ptr<const ToyGroup> group = toy(13);
  std::shared_ptr<ScriptedOracle> oracle;
  SystemParams params;
  MasterKey master;
  PkiKeyPair pki;
  ClcPartialKey partial;
  ClcKeyPair clc;
  BoundClcPublicKey bound;
  Bytes id = to_bytes("bob");
  Bytes message{0x0A};

  ToyWorld() {
    ScriptedRandom rng;
    rng.push(Bytes{3, 5, 2});
    auto base = setup(group, 8, 4, rng);
    oracle = std::make_shared<ScriptedOracle>(group, base.params.max_message_len());
    oracle->script_h1(id, group->element(2), group->scalars().from_u64(5));
    oracle->script_h2(message, group->element(7), group->scalars().from_u64(9));
    oracle->script_h3(group->element(9), Bytes{0x06});
    params = base.params.with_oracles(oracle);
    master = base.master;
    pki = pki_keygen(params, rng);
    partial = clc_extract_partial(params, master, id, rng);
    clc = clc_finalize(params, partial, group->scalars().from_u64(6));
    bound = bind_clc_public_key(params, clc.public_part());
  }

  std::uint64_t v(const GroupElement& x) const { return group->value_of(x); }
  std::uint64_t v(const Scalar& x) const { return x.to_u64(); }
  Scalar s(std::uint64_t x) const { return group->scalars().from_u64(x); }
};

inline ScriptedRandom nonce(std::uint8_t k) { return ScriptedRandom(Bytes{k}); }

// A complete random world on a named group.
struct World {
  SystemParams params;
  MasterKey master;
  PkiKeyPair pki;
  ClcKeyPair clc;
  BoundClcPublicKey bound;

  World(const std::string& group_name, RandomSource& rng, std::uint32_t n_bits = 8 * 1024) {
    auto base = setup(make_group(group_name), n_bits, 128, rng);
    params = base.params;
    master = base.master;
    pki = pki_keygen(params, rng);
    auto partial = clc_extract_partial(params, master, to_bytes("alice@example.org"), rng);
    clc = clc_finalize(params, partial, rng);
    bound = bind_clc_public_key(params, clc.public_part());
  }
};

inline Bytes random_bytes(RandomSource& rng, std::size_t n) {
  Bytes out(n);
  rng.fill(out);
  return out;
}

inline std::size_t random_below(RandomSource& rng, std::size_t bound) {
  std::uint64_t v = 0;
  rng.fill(std::span<std::uint8_t>(reinterpret_cast<std::uint8_t*>(&v), sizeof v));
  return static_cast<std::size_t>(v % bound);
}

}  // namespace hsc::test

#include "hsc/keys.hpp"

#include "hsc/errors.hpp"

namespace hsc {

SystemParams SystemParams::assemble(std::shared_ptr<const Group> group, const GroupElement& master_public,
                                    std::uint32_t n_bits, std::uint32_t l_bits, HashConfig hash) {
  if (n_bits < 8) throw DomainError("n must allow at least one message byte");
  if (l_bits == 0) throw DomainError("security parameter l must be positive");
  SystemParams p;
  p.group = std::move(group);
  p.generator = p.group->generator();
  p.master_public = master_public;
  p.n_bits = n_bits;
  p.l_bits = l_bits;
  p.hash = std::move(hash);
  p.oracles = std::make_shared<XofOracles>(p.group, p.hash, p.max_message_len());
  return p;
}

SystemParams SystemParams::with_oracles(std::shared_ptr<const HashOracles> replacement) const {
  SystemParams p = *this;
  p.oracles = std::move(replacement);
  return p;
}

SetupResult setup(std::shared_ptr<const Group> group, std::uint32_t n_bits, std::uint32_t l_bits,
                  RandomSource& rng, HashConfig hash) {
  Scalar s = group->scalars().random_nonzero(rng);
  GroupElement p_pub = group->mul_base(s);
  auto params = SystemParams::assemble(std::move(group), p_pub, n_bits, l_bits, std::move(hash));
  return {std::move(params), MasterKey{std::move(s)}};
}

PkiKeyPair pki_keygen(const SystemParams& params, RandomSource& rng) {
  Scalar x = params.zq().random_nonzero(rng);
  GroupElement pk = params.g().mul(params.zq().invert(x), params.generator);
  return {std::move(x), std::move(pk)};
}

ClcPartialKey clc_extract_partial(const SystemParams& params, const MasterKey& master, ByteView id,
                                  RandomSource& rng) {
  const auto& zq = params.zq();
  for (;;) {
    Scalar t = zq.random_nonzero(rng);
    GroupElement commitment = params.g().mul(t, params.generator);
    Scalar gamma = params.h().h1(id, commitment);
    Scalar d = zq.add(t, zq.mul(master.s, gamma));
    if (!d.is_zero()) return {Bytes(id.begin(), id.end()), std::move(d), std::move(commitment)};
  }
}

bool verify_partial_key(const SystemParams& params, const ClcPartialKey& partial) {
  const auto& g = params.g();
  Scalar gamma = params.h().h1(partial.id, partial.commitment);
  GroupElement lhs = g.mul(partial.partial, params.generator);
  GroupElement rhs = g.add(partial.commitment, g.mul(gamma, params.master_public));
  return g.equal(lhs, rhs);
}

Scalar clc_secret_value(const SystemParams& params, RandomSource& rng) { return params.zq().random_nonzero(rng); }

ClcKeyPair clc_assemble(const SystemParams& params, const ClcPartialKey& partial, const Scalar& secret_value) {
  if (secret_value.is_zero()) throw DomainError("secret value x_c must be nonzero");
  if (params.zq().add(secret_value, partial.partial).is_zero()) {
    throw DegenerateKeyError("x_c + d == 0 mod q; choose another secret value");
  }
  GroupElement pk_c1 = params.g().mul(secret_value, params.generator);
  return {partial.id, secret_value, partial.partial, partial.commitment, std::move(pk_c1)};
}

ClcKeyPair clc_finalize(const SystemParams& params, const ClcPartialKey& partial, const Scalar& secret_value) {
  if (!verify_partial_key(params, partial)) throw AuthenticityError("partial private key does not verify");
  return clc_assemble(params, partial, secret_value);
}

ClcKeyPair clc_finalize(const SystemParams& params, const ClcPartialKey& partial, RandomSource& rng) {
  if (!verify_partial_key(params, partial)) throw AuthenticityError("partial private key does not verify");
  for (;;) {
    try {
      return clc_assemble(params, partial, clc_secret_value(params, rng));
    } catch (const DegenerateKeyError&) {
    }
  }
}

BoundClcPublicKey bind_clc_public_key(const SystemParams& params, const ClcPublicKey& key) {
  return {key, params.h().h1(key.id, key.commitment)};
}

bool pki_keypair_consistent(const SystemParams& params, const PkiKeyPair& key) {
  if (key.private_key.is_zero()) return false;
  return params.g().equal(params.g().mul(key.private_key, key.public_key), params.generator);
}

bool clc_keypair_consistent(const SystemParams& params, const ClcKeyPair& key) {
  if (key.secret_value.is_zero() || params.zq().add(key.secret_value, key.partial).is_zero()) return false;
  if (!params.g().equal(params.g().mul(key.secret_value, params.generator), key.public_value)) return false;
  return verify_partial_key(params, {key.id, key.partial, key.commitment});
}

}  // namespace hsc

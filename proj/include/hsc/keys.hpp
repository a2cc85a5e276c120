#pragma once

#include <cstdint>
#include <memory>

#include "hsc/bytes.hpp"
#include "hsc/group.hpp"
#include "hsc/hashing.hpp"
#include "hsc/random.hpp"

namespace hsc {

/// Public system parameters {G1, P, Ppub, n, l, H1, H2, H3}.
struct SystemParams {
  std::shared_ptr<const Group> group;
  GroupElement generator;
  GroupElement master_public;
  std::uint32_t n_bits = 0;  ///< maximum message length in bits
  std::uint32_t l_bits = 0;  ///< security parameter
  HashConfig hash;
  std::shared_ptr<const HashOracles> oracles;

  /// Builds params with XOF oracles derived from `hash`.
  static SystemParams assemble(std::shared_ptr<const Group> group, const GroupElement& master_public,
                               std::uint32_t n_bits, std::uint32_t l_bits, HashConfig hash = {});

  /// Copy with the oracles swapped out (e.g. for a ScriptedOracle).
  SystemParams with_oracles(std::shared_ptr<const HashOracles> replacement) const;

  const Group& g() const { return *group; }
  const ScalarField& zq() const { return group->scalars(); }
  const HashOracles& h() const { return *oracles; }
  std::size_t max_message_len() const { return n_bits / 8; }
};

/// The PKG's master secret s. Never part of any public structure.
struct MasterKey {
  Scalar s;
};

struct SetupResult {
  SystemParams params;
  MasterKey master;
};

struct PkiPublicKey {
  GroupElement key;  ///< PK_p = (1/x_p) P
};

struct PkiKeyPair {
  Scalar private_key;      ///< x_p
  GroupElement public_key;  ///< PK_p

  PkiPublicKey public_part() const { return {public_key}; }
};

/// Output of partial private key extraction: d = t + s*H1(ID, T), T = tP.
struct ClcPartialKey {
  Bytes id;
  Scalar partial;           ///< d
  GroupElement commitment;  ///< T
};

struct ClcPublicKey {
  Bytes id;
  GroupElement commitment;    ///< T
  GroupElement public_value;  ///< PK_c1 = x_c P
};

struct ClcKeyPair {
  Bytes id;
  Scalar secret_value;        ///< x_c
  Scalar partial;             ///< d
  GroupElement commitment;    ///< T
  GroupElement public_value;  ///< PK_c1

  ClcPublicKey public_part() const { return {id, commitment, public_value}; }
};

/// A CLC public key together with its identity hash gamma = H1(ID, T).
/// Binding once and reusing the result avoids an H1 call per message.
struct BoundClcPublicKey {
  ClcPublicKey key;
  Scalar gamma;
};

/// PKG setup: draws s, publishes Ppub = sP. Requires n_bits >= 8, l_bits > 0.
SetupResult setup(std::shared_ptr<const Group> group, std::uint32_t n_bits, std::uint32_t l_bits,
                  RandomSource& rng, HashConfig hash = {});

/// PKI-KG: x_p random, PK_p = x_p^{-1} P.
PkiKeyPair pki_keygen(const SystemParams& params, RandomSource& rng);

/// Partial private key extraction (PKG role). The ephemeral t is discarded;
/// t is resampled in the (probability 1/q) event that d == 0.
ClcPartialKey clc_extract_partial(const SystemParams& params, const MasterKey& master, ByteView id,
                                  RandomSource& rng);

/// Accepts iff d P == T + H1(ID, T) Ppub.
bool verify_partial_key(const SystemParams& params, const ClcPartialKey& partial);

/// Set Secret Value: a fresh nonzero x_c.
Scalar clc_secret_value(const SystemParams& params, RandomSource& rng);

/// Private/Public Key Extract without validating the partial key.
/// Throws DegenerateKeyError when x_c + d == 0 mod q, DomainError for x_c == 0.
ClcKeyPair clc_assemble(const SystemParams& params, const ClcPartialKey& partial, const Scalar& secret_value);

/// verify_partial_key followed by clc_assemble. Throws AuthenticityError if
/// the partial key does not verify.
ClcKeyPair clc_finalize(const SystemParams& params, const ClcPartialKey& partial, const Scalar& secret_value);

/// clc_finalize with a freshly drawn x_c, redrawn while degenerate.
ClcKeyPair clc_finalize(const SystemParams& params, const ClcPartialKey& partial, RandomSource& rng);

BoundClcPublicKey bind_clc_public_key(const SystemParams& params, const ClcPublicKey& key);

/// Internal consistency of stored key material (used by the decoders).
bool pki_keypair_consistent(const SystemParams& params, const PkiKeyPair& key);
bool clc_keypair_consistent(const SystemParams& params, const ClcKeyPair& key);

}  // namespace hsc

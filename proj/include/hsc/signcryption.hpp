#pragma once

#include <cstdint>
#include <optional>

#include "hsc/bytes.hpp"
#include "hsc/group.hpp"
#include "hsc/keys.hpp"
#include "hsc/random.hpp"

namespace hsc {

/// Which heterogeneous direction produced a ciphertext.
enum class Direction : std::uint8_t {
  kPchs = 0x01,  ///< PKI sender -> CLC receiver
  kCphs = 0x02,  ///< CLC sender -> PKI receiver
};

const char* to_string(Direction d);

/// sigma = (c, u, V).
struct Ciphertext {
  Direction direction = Direction::kPchs;
  Bytes c;  ///< m xor H3(R2), |c| == |m|
  Scalar u;
  GroupElement v;
};

/// Plaintext on acceptance, std::nullopt for the rejection symbol.
using UnsigncryptOutcome = std::optional<Bytes>;

/// Intermediate values of a signcryption, for derivation checks in tests.
struct SigncryptTrace {
  Scalar k;
  GroupElement r1;
  Scalar h;
  GroupElement r2;
};

/// Intermediate values of an unsigncryption.
struct UnsigncryptTrace {
  GroupElement r1;
  GroupElement r2;
  Scalar h;
};

enum class VerifyMode {
  kFast,     ///< accept iff R2 == hP
  kLiteral,  ///< accept iff R1 == hP - u*X, the textbook form
};

struct UnsigncryptOptions {
  VerifyMode mode = VerifyMode::kFast;
  UnsigncryptTrace* trace = nullptr;
};

/// PKI sender signcrypts to a CLC receiver:
///   R1 = kP, h = H2(m, R1), R2 = hP, c = m ^ H3(R2), u = (h - k) x_p,
///   V = k PK_c1 + T + gamma Ppub.
/// Requires 0 < |m| <= n/8 (DomainError otherwise).
Ciphertext pchs_signcrypt(const SystemParams& params, const PkiKeyPair& sender, const BoundClcPublicKey& receiver,
                          ByteView m, RandomSource& rng, SigncryptTrace* trace = nullptr);
/// As above, computing gamma = H1(ID, T) for this call.
Ciphertext pchs_signcrypt(const SystemParams& params, const PkiKeyPair& sender, const ClcPublicKey& receiver,
                          ByteView m, RandomSource& rng, SigncryptTrace* trace = nullptr);

/// CLC receiver recovers R1 = x_c^{-1}(V - dP), R2 = R1 + u PK_p, m, and checks h.
UnsigncryptOutcome pchs_unsigncrypt(const SystemParams& params, const ClcKeyPair& receiver,
                                    const PkiPublicKey& sender, const Ciphertext& sigma,
                                    UnsigncryptOptions options = {});

/// CLC sender signcrypts to a PKI receiver:
///   u = (h - k) / (x_c + d), V = k PK_p.
Ciphertext cphs_signcrypt(const SystemParams& params, const ClcKeyPair& sender, const PkiPublicKey& receiver,
                          ByteView m, RandomSource& rng, SigncryptTrace* trace = nullptr);

/// PKI receiver recovers R1 = x_p V, Q = PK_c1 + T + gamma Ppub, R2 = R1 + uQ.
UnsigncryptOutcome cphs_unsigncrypt(const SystemParams& params, const PkiKeyPair& receiver,
                                    const BoundClcPublicKey& sender, const Ciphertext& sigma,
                                    UnsigncryptOptions options = {});
UnsigncryptOutcome cphs_unsigncrypt(const SystemParams& params, const PkiKeyPair& receiver,
                                    const ClcPublicKey& sender, const Ciphertext& sigma,
                                    UnsigncryptOptions options = {});

}  // namespace hsc

#include "hsc/signcryption.hpp"

#include "hsc/errors.hpp"

namespace hsc {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::kPchs: return "pchs";
    case Direction::kCphs: return "cphs";
  }
  return "unknown";
}

namespace {

void check_message(const SystemParams& params, ByteView m) {
  if (m.empty()) throw DomainError("message must not be empty");
  if (m.size() > params.max_message_len()) {
    throw DomainError("message of " + std::to_string(m.size()) + " bytes exceeds n/8 = " +
                      std::to_string(params.max_message_len()));
  }
}

Bytes xor_mask(ByteView data, const Bytes& mask) {
  Bytes out(data.begin(), data.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= mask[i];
  return out;
}

// Steps shared by both directions: k, R1 = kP, h, R2 = hP, c.
struct Commitment {
  Scalar k;
  GroupElement r1;
  Scalar h;
  GroupElement r2;
  Bytes c;
};

Commitment commit(const SystemParams& params, ByteView m, RandomSource& rng) {
  const auto& g = params.g();
  Commitment out;
  out.k = params.zq().random_nonzero(rng);
  out.r1 = g.mul_base(out.k);
  out.h = params.h().h2(m, out.r1);
  out.r2 = g.mul_base(out.h);
  out.c = xor_mask(m, params.h().h3(out.r2, m.size()));
  return out;
}

void fill_trace(SigncryptTrace* trace, const Commitment& cm) {
  if (trace != nullptr) *trace = {cm.k, cm.r1, cm.h, cm.r2};
}

bool acceptable_length(const SystemParams& params, const Ciphertext& sigma) {
  return !sigma.c.empty() && sigma.c.size() <= params.max_message_len();
}

// Shared tail of both unsigncryptions, given R1 and u*X where X is the
// sender-side verification point (PK_p or Q).
UnsigncryptOutcome finish(const SystemParams& params, const Ciphertext& sigma, const GroupElement& r1,
                          const GroupElement& u_x, const UnsigncryptOptions& options) {
  const auto& g = params.g();
  GroupElement r2 = g.add(r1, u_x);
  Bytes m = xor_mask(sigma.c, params.h().h3(r2, sigma.c.size()));
  Scalar h = params.h().h2(m, r1);
  GroupElement h_p = g.mul_base(h);

  bool accept = false;
  if (options.mode == VerifyMode::kFast) {
    accept = g.equal(r2, h_p);
  } else {
    accept = g.equal(r1, g.sub(h_p, u_x));
  }
  if (options.trace != nullptr) *options.trace = {r1, r2, h};
  if (!accept) return std::nullopt;
  return m;
}

}  // namespace

Ciphertext pchs_signcrypt(const SystemParams& params, const PkiKeyPair& sender, const BoundClcPublicKey& receiver,
                          ByteView m, RandomSource& rng, SigncryptTrace* trace) {
  check_message(params, m);
  const auto& g = params.g();
  const auto& zq = params.zq();
  Commitment cm = commit(params, m, rng);

  Ciphertext sigma;
  sigma.direction = Direction::kPchs;
  sigma.u = zq.mul(zq.sub(cm.h, cm.k), sender.private_key);
  GroupElement k_pk = g.mul(cm.k, receiver.key.public_value);
  GroupElement gamma_ppub = g.mul(receiver.gamma, params.master_public);
  sigma.v = g.add(g.add(k_pk, receiver.key.commitment), gamma_ppub);
  sigma.c = std::move(cm.c);
  fill_trace(trace, cm);
  return sigma;
}

Ciphertext pchs_signcrypt(const SystemParams& params, const PkiKeyPair& sender, const ClcPublicKey& receiver,
                          ByteView m, RandomSource& rng, SigncryptTrace* trace) {
  check_message(params, m);
  return pchs_signcrypt(params, sender, bind_clc_public_key(params, receiver), m, rng, trace);
}

UnsigncryptOutcome pchs_unsigncrypt(const SystemParams& params, const ClcKeyPair& receiver,
                                    const PkiPublicKey& sender, const Ciphertext& sigma,
                                    UnsigncryptOptions options) {
  if (sigma.direction != Direction::kPchs || !acceptable_length(params, sigma)) return std::nullopt;
  const auto& g = params.g();
  GroupElement d_p = g.mul_base(receiver.partial);
  GroupElement r1 = g.mul(params.zq().invert(receiver.secret_value), g.sub(sigma.v, d_p));
  GroupElement u_pk = g.mul(sigma.u, sender.key);
  return finish(params, sigma, r1, u_pk, options);
}

Ciphertext cphs_signcrypt(const SystemParams& params, const ClcKeyPair& sender, const PkiPublicKey& receiver,
                          ByteView m, RandomSource& rng, SigncryptTrace* trace) {
  check_message(params, m);
  const auto& zq = params.zq();
  Scalar divisor = zq.add(sender.secret_value, sender.partial);
  if (divisor.is_zero()) throw DegenerateKeyError("x_c + d == 0 mod q");
  Commitment cm = commit(params, m, rng);

  Ciphertext sigma;
  sigma.direction = Direction::kCphs;
  sigma.u = zq.mul(zq.sub(cm.h, cm.k), zq.invert(divisor));
  sigma.v = params.g().mul(cm.k, receiver.key);
  sigma.c = std::move(cm.c);
  fill_trace(trace, cm);
  return sigma;
}

UnsigncryptOutcome cphs_unsigncrypt(const SystemParams& params, const PkiKeyPair& receiver,
                                    const BoundClcPublicKey& sender, const Ciphertext& sigma,
                                    UnsigncryptOptions options) {
  if (sigma.direction != Direction::kCphs || !acceptable_length(params, sigma)) return std::nullopt;
  const auto& g = params.g();
  GroupElement r1 = g.mul(receiver.private_key, sigma.v);
  GroupElement q = g.add(g.add(sender.key.public_value, sender.key.commitment),
                         g.mul(sender.gamma, params.master_public));
  GroupElement u_q = g.mul(sigma.u, q);
  return finish(params, sigma, r1, u_q, options);
}

UnsigncryptOutcome cphs_unsigncrypt(const SystemParams& params, const PkiKeyPair& receiver,
                                    const ClcPublicKey& sender, const Ciphertext& sigma,
                                    UnsigncryptOptions options) {
  if (sigma.direction != Direction::kCphs || !acceptable_length(params, sigma)) return std::nullopt;
  return cphs_unsigncrypt(params, receiver, bind_clc_public_key(params, sender), sigma, options);
}

}  // namespace hsc

#pragma once

#include <cstddef>
#include <cstdint>

#include "hsc/bytes.hpp"
#include "hsc/keys.hpp"
#include "hsc/signcryption.hpp"
#include "hsc/stream.hpp"

namespace hsc {

// ------------------------------------------------------------ ciphertexts
//
// direction (1) || u (scalar_len) || V (element_len) || c (|m|)

/// Exact wire size of a ciphertext carrying `message_len` bytes.
std::size_t ciphertext_size(const Group& group, std::size_t message_len);

Bytes encode_ciphertext(const Group& group, const Ciphertext& sigma);
/// Distinct DecodeErrc for a short payload, a bad direction byte, u >= q
/// and a V that is not a canonical group element.
Ciphertext decode_ciphertext(ByteView wire, const Group& group);

// ------------------------------------------------------------ key files
//
// "HSC1" || version || kind || u8 |group| || group name || body

inline constexpr std::uint8_t kFormatVersion = 0x01;

enum class FileKind : std::uint8_t {
  kParams = 0x01,
  kMasterKey = 0x02,
  kPkiPrivate = 0x03,
  kClcPrivate = 0x04,
  kPkiPublic = 0x05,
  kClcPublic = 0x06,
  kClcPartial = 0x07,
};

const char* to_string(FileKind kind);

/// Validates magic and version and returns the kind byte.
FileKind peek_kind(ByteView file);

Bytes encode_params(const SystemParams& params);
SystemParams decode_params(ByteView file);

/// The master key file records s only; decoding checks sP == Ppub so it
/// loads only against the params it was created with.
Bytes encode_master_key(const SystemParams& params, const MasterKey& master);
MasterKey decode_master_key(ByteView file, const SystemParams& params);

Bytes encode_pki_keypair(const SystemParams& params, const PkiKeyPair& key);
PkiKeyPair decode_pki_keypair(ByteView file, const SystemParams& params);

Bytes encode_clc_keypair(const SystemParams& params, const ClcKeyPair& key);
ClcKeyPair decode_clc_keypair(ByteView file, const SystemParams& params);

Bytes encode_clc_partial(const SystemParams& params, const ClcPartialKey& partial);
ClcPartialKey decode_clc_partial(ByteView file, const SystemParams& params);

Bytes encode_pki_public(const SystemParams& params, const PkiPublicKey& key);
PkiPublicKey decode_pki_public(ByteView file, const SystemParams& params);

Bytes encode_clc_public(const SystemParams& params, const ClcPublicKey& key);
ClcPublicKey decode_clc_public(ByteView file, const SystemParams& params);

/// Headerless bodies carried in demo frames.
/// PKI: PK_p.  CLC: u16 |id| || id || T || PK_c1.
Bytes encode_pki_public_payload(const Group& group, const PkiPublicKey& key);
PkiPublicKey decode_pki_public_payload(ByteView payload, const Group& group);
Bytes encode_clc_public_payload(const Group& group, const ClcPublicKey& key);
ClcPublicKey decode_clc_public_payload(ByteView payload, const Group& group);

// ------------------------------------------------------------ frames
//
// type (1) || u32 big-endian length || payload

enum class FrameType : std::uint8_t {
  kPkiPublicKey = 0x02,
  kClcPublicKey = 0x03,
  kCiphertext = 0x04,
  kStatus = 0x05,
};

inline constexpr std::size_t kFrameHeaderLen = 5;
inline constexpr std::size_t kMaxFramePayload = std::size_t{1} << 20;

struct Frame {
  FrameType type = FrameType::kStatus;
  Bytes payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

bool is_known_frame_type(std::uint8_t tag);

/// Throws ProtocolError if the payload exceeds kMaxFramePayload.
Bytes encode_frame(const Frame& frame);
void write_frame(ByteStream& sink, const Frame& frame);
/// Blocks until a whole frame arrives. Throws EndOfStream if the stream ends
/// first (including a clean close before any header byte) and ProtocolError
/// for an unknown type tag or oversize length.
Frame read_frame(ByteStream& source);

}  // namespace hsc

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hsc/codec.hpp"
#include "hsc/keys.hpp"
#include "hsc/net.hpp"

namespace hsc {

// Client/server demonstration of one signcrypted exchange:
//
//   client                               server
//     | -- own public key (0x02|0x03) ---> |
//     | <-- own public key (0x03|0x02) --- |
//     | -- ciphertext (0x04) ------------> |   unsigncrypt
//     | <-- status (0x05) ---------------- |   "Verification Success!"
//     | -- status (0x05) ----------------> |   "The client has received the result."
//
// A PKI client talks to a CLC server (PCHS); a CLC client talks to a PKI
// server (CPHS). Public keys are exchanged in-band and unauthenticated, so
// the exchange offers no protection against an active attacker.

inline constexpr std::string_view kStatusSuccess = "Verification Success!";
inline constexpr std::string_view kStatusFailure = "Verification Failed!";
inline constexpr std::string_view kStatusReceived = "The client has received the result.";
inline constexpr std::uint16_t kDefaultPort = 7050;

enum class SessionStatus {
  kCompleted,
  kVerificationFailed,   ///< server: ciphertext rejected
  kMalformedCiphertext,  ///< server: ciphertext did not decode
  kPeerRejected,         ///< client: server answered "Verification Failed!"
  kProtocolViolation,    ///< frame out of order or unexpected status text
  kMalformedFrame,       ///< unknown type tag or oversize length
  kMalformedKey,         ///< peer public key did not decode
  kConnectionLost,
  kIoError,
};

const char* to_string(SessionStatus status);
/// Stable numeric code used in logs.
int code_of(SessionStatus status);

enum class SessionState { kStart, kKeysExchanged, kCiphertextExchanged, kAcked, kDone, kAborted };

const char* to_string(SessionState state);

struct TranscriptEntry {
  std::size_t index = 0;
  bool sent = false;
  Frame frame;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;

  void record(bool sent, const Frame& frame) { entries.push_back({entries.size(), sent, frame}); }
  std::vector<FrameType> types() const;
  /// One line per frame: "<index> <sent|recv> 0x<tag> <hex payload>".
  std::string to_log() const;
};

using DemoKey = std::variant<PkiKeyPair, ClcKeyPair>;

struct SessionReport {
  SessionStatus status = SessionStatus::kCompleted;
  SessionState final_state = SessionState::kStart;
  Transcript transcript;
  std::string detail;
  std::optional<Bytes> message;  ///< server side: plaintext that verified

  bool ok() const { return status == SessionStatus::kCompleted; }
};

struct ClientOptions {
  /// Fault injection: rewrites the encoded ciphertext before it is sent.
  std::function<void(Bytes&)> tamper_ciphertext;
};

/// Runs the server side of one session over an established stream.
SessionReport serve_session(const SystemParams& params, const DemoKey& key, ByteStream& stream);

/// Runs the client side of one session. |m| must not exceed n/8.
SessionReport client_session(const SystemParams& params, const DemoKey& key, ByteStream& stream, ByteView m,
                             RandomSource& rng, const ClientOptions& options = {});

struct ServerOptions {
  std::size_t max_sessions = 0;  ///< 0 serves until the process ends
  std::chrono::milliseconds read_timeout{10000};
  std::ostream* log = nullptr;
};

/// Accepts and serves sessions one at a time.
std::vector<SessionReport> run_server(const SystemParams& params, const DemoKey& key, TcpListener& listener,
                                      const ServerOptions& options = {});

SessionReport run_client(const SystemParams& params, const DemoKey& key, const std::string& host,
                         std::uint16_t port, ByteView m, RandomSource& rng, const ClientOptions& options = {},
                         std::chrono::milliseconds connect_timeout = std::chrono::milliseconds(3000));

}  // namespace hsc

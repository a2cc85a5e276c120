#include "hsc/netdemo.hpp"

#include <sstream>

#include "hsc/errors.hpp"
#include "hsc/signcryption.hpp"

namespace hsc {

const char* to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::kCompleted: return "completed";
    case SessionStatus::kVerificationFailed: return "verification_failed";
    case SessionStatus::kMalformedCiphertext: return "malformed_ciphertext";
    case SessionStatus::kPeerRejected: return "peer_rejected";
    case SessionStatus::kProtocolViolation: return "protocol_violation";
    case SessionStatus::kMalformedFrame: return "malformed_frame";
    case SessionStatus::kMalformedKey: return "malformed_key";
    case SessionStatus::kConnectionLost: return "connection_lost";
    case SessionStatus::kIoError: return "io_error";
  }
  return "unknown";
}

int code_of(SessionStatus status) { return static_cast<int>(status); }

const char* to_string(SessionState state) {
  switch (state) {
    case SessionState::kStart: return "start";
    case SessionState::kKeysExchanged: return "keys_exchanged";
    case SessionState::kCiphertextExchanged: return "ciphertext_exchanged";
    case SessionState::kAcked: return "acked";
    case SessionState::kDone: return "done";
    case SessionState::kAborted: return "aborted";
  }
  return "unknown";
}

std::vector<FrameType> Transcript::types() const {
  std::vector<FrameType> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.frame.type);
  return out;
}

std::string Transcript::to_log() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << e.index << ' ' << (e.sent ? "sent" : "recv") << " 0x" << to_hex(Bytes{static_cast<std::uint8_t>(e.frame.type)})
       << ' ' << to_hex(e.frame.payload) << '\n';
  }
  return os.str();
}

namespace {

/// Ends a session early with the given status.
struct Abort {
  SessionStatus status;
  std::string detail;
};

class Session {
 public:
  explicit Session(ByteStream& stream) : stream_(stream) {}

  void send(FrameType type, Bytes payload) {
    Frame f{type, std::move(payload)};
    write_frame(stream_, f);
    report_.transcript.record(true, f);
  }

  void send_status(std::string_view text) { send(FrameType::kStatus, to_bytes(text)); }

  Frame expect(FrameType type) {
    Frame f = read_frame(stream_);
    report_.transcript.record(false, f);
    if (f.type != type) {
      throw Abort{SessionStatus::kProtocolViolation,
                  "expected frame 0x" + to_hex(Bytes{static_cast<std::uint8_t>(type)}) + ", got 0x" +
                      to_hex(Bytes{static_cast<std::uint8_t>(f.type)}) + " in state " + to_string(state_)};
    }
    return f;
  }

  void advance(SessionState s) { state_ = s; }

  template <typename Body>
  SessionReport run(Body&& body) {
    try {
      body(*this);
      report_.status = SessionStatus::kCompleted;
      state_ = SessionState::kDone;
    } catch (const Abort& a) {
      finish_abort(a.status, a.detail);
    } catch (const EndOfStream& e) {
      finish_abort(SessionStatus::kConnectionLost, e.what());
    } catch (const ProtocolError& e) {
      finish_abort(SessionStatus::kMalformedFrame, e.what());
    } catch (const IoError& e) {
      finish_abort(SessionStatus::kIoError, e.what());
    }
    report_.final_state = state_;
    return std::move(report_);
  }

  SessionReport& report() { return report_; }

 private:
  void finish_abort(SessionStatus status, std::string detail) {
    report_.status = status;
    report_.detail = std::move(detail);
    state_ = SessionState::kAborted;
  }

  ByteStream& stream_;
  SessionState state_ = SessionState::kStart;
  SessionReport report_;
};

FrameType key_frame_type(const DemoKey& key) {
  return std::holds_alternative<PkiKeyPair>(key) ? FrameType::kPkiPublicKey : FrameType::kClcPublicKey;
}

FrameType peer_key_frame_type(const DemoKey& key) {
  return std::holds_alternative<PkiKeyPair>(key) ? FrameType::kClcPublicKey : FrameType::kPkiPublicKey;
}

Bytes own_public_payload(const Group& g, const DemoKey& key) {
  if (const auto* pki = std::get_if<PkiKeyPair>(&key)) return encode_pki_public_payload(g, pki->public_part());
  return encode_clc_public_payload(g, std::get<ClcKeyPair>(key).public_part());
}

using PeerKey = std::variant<PkiPublicKey, ClcPublicKey>;

PeerKey decode_peer(const Group& g, const DemoKey& own, ByteView payload) {
  try {
    if (std::holds_alternative<PkiKeyPair>(own)) return decode_clc_public_payload(payload, g);
    return decode_pki_public_payload(payload, g);
  } catch (const DecodeError& e) {
    throw Abort{SessionStatus::kMalformedKey, e.what()};
  }
}

}  // namespace

SessionReport serve_session(const SystemParams& params, const DemoKey& key, ByteStream& stream) {
  Session session(stream);
  return session.run([&](Session& s) {
    const auto& g = params.g();
    Frame peer_frame = s.expect(peer_key_frame_type(key));
    PeerKey peer = decode_peer(g, key, peer_frame.payload);
    s.send(key_frame_type(key), own_public_payload(g, key));
    s.advance(SessionState::kKeysExchanged);

    Frame ct_frame = s.expect(FrameType::kCiphertext);
    s.advance(SessionState::kCiphertextExchanged);
    Ciphertext sigma;
    try {
      sigma = decode_ciphertext(ct_frame.payload, g);
    } catch (const DecodeError& e) {
      s.send_status(kStatusFailure);
      throw Abort{SessionStatus::kMalformedCiphertext, e.what()};
    }

    UnsigncryptOutcome outcome;
    if (const auto* clc = std::get_if<ClcKeyPair>(&key)) {
      outcome = pchs_unsigncrypt(params, *clc, std::get<PkiPublicKey>(peer), sigma);
    } else {
      outcome = cphs_unsigncrypt(params, std::get<PkiKeyPair>(key), std::get<ClcPublicKey>(peer), sigma);
    }
    if (!outcome) {
      s.send_status(kStatusFailure);
      throw Abort{SessionStatus::kVerificationFailed, "unsigncryption returned reject"};
    }
    s.report().message = std::move(*outcome);
    s.send_status(kStatusSuccess);
    s.advance(SessionState::kAcked);

    Frame reply = s.expect(FrameType::kStatus);
    if (reply.payload != to_bytes(kStatusReceived)) {
      throw Abort{SessionStatus::kProtocolViolation, "unexpected client reply: " + to_string(reply.payload)};
    }
  });
}

SessionReport client_session(const SystemParams& params, const DemoKey& key, ByteStream& stream, ByteView m,
                             RandomSource& rng, const ClientOptions& options) {
  Session session(stream);
  return session.run([&](Session& s) {
    const auto& g = params.g();
    s.send(key_frame_type(key), own_public_payload(g, key));
    Frame peer_frame = s.expect(peer_key_frame_type(key));
    PeerKey peer = decode_peer(g, key, peer_frame.payload);
    s.advance(SessionState::kKeysExchanged);

    Ciphertext sigma;
    if (const auto* pki = std::get_if<PkiKeyPair>(&key)) {
      sigma = pchs_signcrypt(params, *pki, std::get<ClcPublicKey>(peer), m, rng);
    } else {
      sigma = cphs_signcrypt(params, std::get<ClcKeyPair>(key), std::get<PkiPublicKey>(peer), m, rng);
    }
    Bytes wire = encode_ciphertext(g, sigma);
    if (options.tamper_ciphertext) options.tamper_ciphertext(wire);
    s.send(FrameType::kCiphertext, std::move(wire));
    s.advance(SessionState::kCiphertextExchanged);

    Frame status = s.expect(FrameType::kStatus);
    if (status.payload == to_bytes(kStatusFailure)) {
      throw Abort{SessionStatus::kPeerRejected, "server answered " + std::string(kStatusFailure)};
    }
    if (status.payload != to_bytes(kStatusSuccess)) {
      throw Abort{SessionStatus::kProtocolViolation, "unexpected server status: " + to_string(status.payload)};
    }
    s.advance(SessionState::kAcked);
    s.send_status(kStatusReceived);
  });
}

std::vector<SessionReport> run_server(const SystemParams& params, const DemoKey& key, TcpListener& listener,
                                      const ServerOptions& options) {
  std::vector<SessionReport> reports;
  for (std::size_t n = 0; options.max_sessions == 0 || n < options.max_sessions; ++n) {
    SocketStream conn = listener.accept();
    conn.set_read_timeout(options.read_timeout);
    SessionReport report = serve_session(params, key, conn);
    if (options.log != nullptr) {
      *options.log << "session " << n << " status=" << to_string(report.status) << " code=" << code_of(report.status)
                   << " frames=" << report.transcript.entries.size();
      if (!report.detail.empty()) *options.log << " detail=\"" << report.detail << '"';
      *options.log << std::endl;
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

SessionReport run_client(const SystemParams& params, const DemoKey& key, const std::string& host,
                         std::uint16_t port, ByteView m, RandomSource& rng, const ClientOptions& options,
                         std::chrono::milliseconds connect_timeout) {
  SocketStream conn = connect_tcp(host, port, connect_timeout);
  conn.set_read_timeout(std::chrono::milliseconds(10000));
  return client_session(params, key, conn, m, rng, options);
}

}  // namespace hsc

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hsc/bench.hpp"
#include "hsc/codec.hpp"
#include "hsc/errors.hpp"
#include "hsc/keys.hpp"
#include "hsc/netdemo.hpp"
#include "hsc/signcryption.hpp"

namespace hsc::cli {

namespace {

/// Raised for unusable command lines that CLI11 itself cannot detect.
struct UsageError : Error {
  using Error::Error;
};

/// Unsigncrypt returned the rejection symbol, or a peer rejected us.
struct Rejected : Error {
  using Error::Error;
};

struct Options {
  std::string params_file;
  std::string key_file;
  std::string peer_file;
  std::string id;
  std::string in_file;
  std::string out_file;
  std::string mode;
  std::string host = "127.0.0.1";
  std::uint16_t port = kDefaultPort;
  std::size_t iters = 10000;
  std::size_t algo_iters = 0;
  std::size_t sessions = 0;
  std::string group{kDefaultGroup};
  std::uint32_t n_bits = 8 * 65536;
  std::uint32_t l_bits = 128;
  std::string message;
  std::string transcript_file;
  bool force = false;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, ByteView data, bool force) {
  if (!force && std::filesystem::exists(path)) {
    throw IoError("refusing to overwrite " + path + " (use --force)");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("short write to " + path);
}

void append_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

std::unique_ptr<RandomSource> make_rng() {
#ifdef HSC_ALLOW_SEED_ENV
  if (const char* seed = std::getenv("HSC_SEED"); seed != nullptr && *seed != '\0') {
    return std::make_unique<SeededRandom>(std::stoull(seed));
  }
#endif
  return std::make_unique<SystemRandom>();
}

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return value;
}

SystemParams load_params(const Options& o) { return decode_params(read_file(require(o.params_file, "--params"))); }

Direction parse_mode(const std::string& mode) {
  if (mode == "pchs") return Direction::kPchs;
  if (mode == "cphs") return Direction::kCphs;
  throw UsageError("--mode must be pchs or cphs");
}

DemoKey load_demo_key(const SystemParams& params, const std::string& path) {
  Bytes file = read_file(path);
  switch (peek_kind(file)) {
    case FileKind::kPkiPrivate: return decode_pki_keypair(file, params);
    case FileKind::kClcPrivate: return decode_clc_keypair(file, params);
    default: throw UsageError(path + " is not a PKI or CLC private key file");
  }
}

Bytes message_input(const Options& o) {
  if (!o.message.empty()) return to_bytes(o.message);
  return read_file(require(o.in_file, "--in or --message"));
}

// ------------------------------------------------------------ commands

int cmd_setup(const Options& o, std::ostream& out) {
  require(o.out_file, "--out");
  require(o.key_file, "--key");
  auto rng = make_rng();
  auto [params, master] = setup(make_group(o.group), o.n_bits, o.l_bits, *rng);
  write_file(o.out_file, encode_params(params), o.force);
  write_file(o.key_file, encode_master_key(params, master), o.force);
  out << "params " << o.out_file << " group=" << params.g().name() << " n=" << params.n_bits << '\n';
  return kExitOk;
}

int cmd_pki_keygen(const Options& o, std::ostream& out) {
  auto params = load_params(o);
  auto rng = make_rng();
  auto key = pki_keygen(params, *rng);
  write_file(require(o.out_file, "--out"), encode_pki_keypair(params, key), o.force);
  out << "pki key " << o.out_file << '\n';
  return kExitOk;
}

int cmd_clc_extract(const Options& o, std::ostream& out) {
  auto params = load_params(o);
  auto master = decode_master_key(read_file(require(o.key_file, "--key")), params);
  auto rng = make_rng();
  auto partial = clc_extract_partial(params, master, to_bytes(require(o.id, "--id")), *rng);
  write_file(require(o.out_file, "--out"), encode_clc_partial(params, partial), o.force);
  out << "partial key for " << o.id << ' ' << o.out_file << '\n';
  return kExitOk;
}

int cmd_clc_finalize(const Options& o, std::ostream& out) {
  auto params = load_params(o);
  auto partial = decode_clc_partial(read_file(require(o.in_file, "--in")), params);
  if (!o.id.empty() && to_bytes(o.id) != partial.id) throw UsageError("--id does not match the partial key");
  auto rng = make_rng();
  auto key = clc_finalize(params, partial, *rng);
  write_file(require(o.out_file, "--out"), encode_clc_keypair(params, key), o.force);
  out << "clc key for " << to_string(key.id) << ' ' << o.out_file << '\n';
  return kExitOk;
}

int cmd_export_pub(const Options& o, std::ostream& out) {
  auto params = load_params(o);
  Bytes file = read_file(require(o.key_file, "--key"));
  Bytes pub;
  switch (peek_kind(file)) {
    case FileKind::kPkiPrivate: pub = encode_pki_public(params, decode_pki_keypair(file, params).public_part()); break;
    case FileKind::kClcPrivate: pub = encode_clc_public(params, decode_clc_keypair(file, params).public_part()); break;
    default: throw UsageError(o.key_file + " is not a PKI or CLC private key file");
  }
  write_file(require(o.out_file, "--out"), pub, o.force);
  out << "public key " << o.out_file << '\n';
  return kExitOk;
}

int cmd_signcrypt(const Options& o, std::ostream& out) {
  auto params = load_params(o);
  Direction mode = parse_mode(o.mode);
  Bytes key_file = read_file(require(o.key_file, "--key"));
  Bytes peer_file = read_file(require(o.peer_file, "--peer"));
  Bytes m = message_input(o);
  auto rng = make_rng();
  Ciphertext sigma;
  if (mode == Direction::kPchs) {
    auto sender = decode_pki_keypair(key_file, params);
    auto receiver = decode_clc_public(peer_file, params);
    if (!o.id.empty() && to_bytes(o.id) != receiver.id) throw UsageError("--id does not match the peer key");
    sigma = pchs_signcrypt(params, sender, receiver, m, *rng);
  } else {
    auto sender = decode_clc_keypair(key_file, params);
    auto receiver = decode_pki_public(peer_file, params);
    sigma = cphs_signcrypt(params, sender, receiver, m, *rng);
  }
  Bytes wire = encode_ciphertext(params.g(), sigma);
  write_file(require(o.out_file, "--out"), wire, true);
  out << "ciphertext " << o.out_file << " bytes=" << wire.size() << '\n';
  return kExitOk;
}

int cmd_unsigncrypt(const Options& o, std::ostream& out) {
  auto params = load_params(o);
  Direction mode = parse_mode(o.mode);
  Bytes key_file = read_file(require(o.key_file, "--key"));
  Bytes peer_file = read_file(require(o.peer_file, "--peer"));
  Ciphertext sigma = decode_ciphertext(read_file(require(o.in_file, "--in")), params.g());
  UnsigncryptOutcome m;
  if (mode == Direction::kPchs) {
    m = pchs_unsigncrypt(params, decode_clc_keypair(key_file, params), decode_pki_public(peer_file, params), sigma);
  } else {
    m = cphs_unsigncrypt(params, decode_pki_keypair(key_file, params), decode_clc_public(peer_file, params), sigma);
  }
  if (!m) {
    out << "REJECT\n";
    throw Rejected("unsigncryption rejected the ciphertext");
  }
  if (o.out_file.empty()) {
    out.write(reinterpret_cast<const char*>(m->data()), static_cast<std::streamsize>(m->size()));
  } else {
    write_file(o.out_file, *m, true);
    out << "ACCEPT " << o.out_file << " bytes=" << m->size() << '\n';
  }
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out) {
  auto params = load_params(o);
  DemoKey key = load_demo_key(params, require(o.key_file, "--key"));
  TcpListener listener(o.host, o.port);
  out << "listening on " << o.host << ':' << listener.port() << std::endl;
  ServerOptions options;
  options.max_sessions = o.sessions;
  options.log = &out;
  auto reports = run_server(params, key, listener, options);
  bool all_ok = true;
  for (const auto& r : reports) {
    if (r.message) out << "received " << r.message->size() << " bytes: " << to_string(*r.message) << '\n';
    if (!o.transcript_file.empty()) append_text(o.transcript_file, r.transcript.to_log());
    all_ok = all_ok && r.ok();
  }
  return all_ok ? kExitOk : kExitRejected;
}

int cmd_client(const Options& o, std::ostream& out) {
  auto params = load_params(o);
  DemoKey key = load_demo_key(params, require(o.key_file, "--key"));
  Bytes m = message_input(o);
  auto rng = make_rng();
  SessionReport report = run_client(params, key, o.host, o.port, m, *rng);
  if (!o.transcript_file.empty()) append_text(o.transcript_file, report.transcript.to_log());
  for (const auto& e : report.transcript.entries) {
    if (e.frame.type == FrameType::kStatus) {
      out << (e.sent ? "sent: " : "received: ") << to_string(e.frame.payload) << '\n';
    }
  }
  out << "session status=" << to_string(report.status) << " code=" << code_of(report.status) << '\n';
  switch (report.status) {
    case SessionStatus::kCompleted: return kExitOk;
    case SessionStatus::kPeerRejected: throw Rejected(report.detail);
    case SessionStatus::kMalformedKey: throw DecodeError(DecodeErrc::kOffGroupElement, report.detail);
    default: throw IoError(std::string(to_string(report.status)) + ": " + report.detail);
  }
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::shared_ptr<const Group> group =
      o.params_file.empty() ? make_group(o.group) : load_params(o).group;
  if (o.iters == 0) throw UsageError("--iters must be at least 1");
  BenchConfig config;
  config.primitive_iterations = o.iters;
  config.algorithm_iterations = o.algo_iters != 0 ? o.algo_iters : std::max<std::size_t>(1, o.iters / 10);
  auto rng = make_rng();
  BenchReport report = bench_run(group, config, *rng);
  report.print_table(out);
  if (!o.out_file.empty()) {
    std::ostringstream rows;
    report.write_rows(rows);
    write_file(o.out_file, to_bytes(rows.str()), true);
  }
  return kExitOk;
}

void error_line(std::ostream& err, const char* kind, const std::string& code, const std::string& message) {
  err << "error=" << kind << " code=" << code << " message=" << message << '\n';
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heterogeneous PKI/CLC signcryption toolkit", "hsc"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--params", o.params_file, "system parameters file");
    sub->add_option("--key", o.key_file, "key file");
    sub->add_option("--peer", o.peer_file, "peer public key file");
    sub->add_option("--id", o.id, "identity");
    sub->add_option("--in", o.in_file, "input file");
    sub->add_option("--out", o.out_file, "output file");
    sub->add_flag("--force", o.force, "overwrite existing key files");
  };

  auto* setup_cmd = app.add_subcommand("setup", "PKG setup: write params (--out) and master key (--key)");
  add_common(setup_cmd);
  setup_cmd->add_option("--group", o.group, "P-256, secp256k1 or toy-<q>");
  setup_cmd->add_option("--nbits", o.n_bits, "maximum message length in bits");
  setup_cmd->add_option("--lbits", o.l_bits, "security parameter");

  auto* pki_cmd = app.add_subcommand("pki-keygen", "generate a PKI key pair");
  add_common(pki_cmd);
  auto* extract_cmd = app.add_subcommand("clc-extract", "PKG: extract a partial private key for --id");
  add_common(extract_cmd);
  auto* finalize_cmd = app.add_subcommand("clc-finalize", "verify a partial key (--in) and build the CLC key pair");
  add_common(finalize_cmd);
  auto* export_cmd = app.add_subcommand("export-pub", "write the public part of a private key file");
  add_common(export_cmd);

  auto* sign_cmd = app.add_subcommand("signcrypt", "signcrypt --in to --out");
  add_common(sign_cmd);
  sign_cmd->add_option("--mode", o.mode, "pchs or cphs")->required();
  sign_cmd->add_option("--message", o.message, "message text instead of --in");
  auto* unsign_cmd = app.add_subcommand("unsigncrypt", "unsigncrypt --in; exits 3 and prints REJECT on failure");
  add_common(unsign_cmd);
  unsign_cmd->add_option("--mode", o.mode, "pchs or cphs")->required();

  auto* serve_cmd = app.add_subcommand("serve", "run the demo server");
  add_common(serve_cmd);
  serve_cmd->add_option("--host", o.host, "bind address");
  serve_cmd->add_option("--port", o.port, "TCP port");
  serve_cmd->add_option("--sessions", o.sessions, "stop after N sessions (0 = never)");
  serve_cmd->add_option("--transcript", o.transcript_file, "append session transcripts to FILE");

  auto* client_cmd = app.add_subcommand("client", "run the demo client");
  add_common(client_cmd);
  client_cmd->add_option("--host", o.host, "server address");
  client_cmd->add_option("--port", o.port, "TCP port");
  client_cmd->add_option("--message", o.message, "message text instead of --in");
  client_cmd->add_option("--transcript", o.transcript_file, "append the session transcript to FILE");

  auto* bench_cmd = app.add_subcommand("bench", "time primitives and algorithms; --out writes CSV rows");
  add_common(bench_cmd);
  bench_cmd->add_option("--group", o.group, "group when --params is not given");
  bench_cmd->add_option("--iters", o.iters, "iterations for primitive operations");
  bench_cmd->add_option("--algo-iters", o.algo_iters, "iterations for full algorithms (default iters/10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", e.get_name(), e.what());
    return kExitUsage;
  }

  try {
    if (*setup_cmd) return cmd_setup(o, out);
    if (*pki_cmd) return cmd_pki_keygen(o, out);
    if (*extract_cmd) return cmd_clc_extract(o, out);
    if (*finalize_cmd) return cmd_clc_finalize(o, out);
    if (*export_cmd) return cmd_export_pub(o, out);
    if (*sign_cmd) return cmd_signcrypt(o, out);
    if (*unsign_cmd) return cmd_unsigncrypt(o, out);
    if (*serve_cmd) return cmd_serve(o, out);
    if (*client_cmd) return cmd_client(o, out);
    if (*bench_cmd) return cmd_bench(o, out);
  } catch (const UsageError& e) {
    error_line(err, "usage", "bad_arguments", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    error_line(err, "usage", "domain", e.what());
    return kExitUsage;
  } catch (const Rejected& e) {
    error_line(err, "crypto", "reject", e.what());
    return kExitRejected;
  } catch (const AuthenticityError& e) {
    error_line(err, "crypto", "invalid_partial_key", e.what());
    return kExitRejected;
  } catch (const DegenerateKeyError& e) {
    error_line(err, "crypto", "degenerate_key", e.what());
    return kExitRejected;
  } catch (const DecodeError& e) {
    error_line(err, "decode", to_string(e.code()), e.what());
    return kExitIo;
  } catch (const IoError& e) {
    error_line(err, "io", "io", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    error_line(err, "internal", "exception", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hsc::cli

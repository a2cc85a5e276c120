// Python bindings. Keys, parameters and ciphertexts cross the boundary in
// their file/wire encodings, so everything produced here interoperates with
// the hsc command-line tool.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "hsc/bench.hpp"
#include "hsc/codec.hpp"
#include "hsc/errors.hpp"
#include "hsc/keys.hpp"
#include "hsc/random.hpp"
#include "hsc/signcryption.hpp"

namespace py = pybind11;
using namespace hsc;

namespace {

Bytes in(const py::bytes& b) {
  std::string_view s(b);
  return Bytes(s.begin(), s.end());
}

py::bytes out(const Bytes& b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

Direction mode_of(const std::string& mode) {
  if (mode == "pchs") return Direction::kPchs;
  if (mode == "cphs") return Direction::kCphs;
  throw py::value_error("mode must be 'pchs' or 'cphs'");
}

py::tuple py_setup(const std::string& group, std::uint32_t n_bits, std::uint32_t l_bits) {
  SystemRandom rng;
  auto r = setup(make_group(group), n_bits, l_bits, rng);
  return py::make_tuple(out(encode_params(r.params)), out(encode_master_key(r.params, r.master)));
}

py::bytes py_pki_keygen(const py::bytes& params_file) {
  auto params = decode_params(in(params_file));
  SystemRandom rng;
  return out(encode_pki_keypair(params, pki_keygen(params, rng)));
}

py::bytes py_clc_extract(const py::bytes& params_file, const py::bytes& master_file, const py::bytes& id) {
  auto params = decode_params(in(params_file));
  auto master = decode_master_key(in(master_file), params);
  SystemRandom rng;
  return out(encode_clc_partial(params, clc_extract_partial(params, master, in(id), rng)));
}

bool py_verify_partial(const py::bytes& params_file, const py::bytes& partial_file) {
  auto params = decode_params(in(params_file));
  return verify_partial_key(params, decode_clc_partial(in(partial_file), params));
}

py::bytes py_clc_finalize(const py::bytes& params_file, const py::bytes& partial_file) {
  auto params = decode_params(in(params_file));
  SystemRandom rng;
  return out(encode_clc_keypair(params, clc_finalize(params, decode_clc_partial(in(partial_file), params), rng)));
}

py::bytes py_export_public(const py::bytes& params_file, const py::bytes& key_file) {
  auto params = decode_params(in(params_file));
  Bytes key = in(key_file);
  switch (peek_kind(key)) {
    case FileKind::kPkiPrivate: return out(encode_pki_public(params, decode_pki_keypair(key, params).public_part()));
    case FileKind::kClcPrivate: return out(encode_clc_public(params, decode_clc_keypair(key, params).public_part()));
    default: throw py::value_error("not a PKI or CLC private key file");
  }
}

py::bytes py_signcrypt(const py::bytes& params_file, const std::string& mode, const py::bytes& key_file,
                       const py::bytes& peer_file, const py::bytes& message) {
  auto params = decode_params(in(params_file));
  SystemRandom rng;
  Ciphertext sigma;
  if (mode_of(mode) == Direction::kPchs) {
    sigma = pchs_signcrypt(params, decode_pki_keypair(in(key_file), params), decode_clc_public(in(peer_file), params),
                           in(message), rng);
  } else {
    sigma = cphs_signcrypt(params, decode_clc_keypair(in(key_file), params), decode_pki_public(in(peer_file), params),
                           in(message), rng);
  }
  return out(encode_ciphertext(params.g(), sigma));
}

py::object py_unsigncrypt(const py::bytes& params_file, const std::string& mode, const py::bytes& key_file,
                          const py::bytes& peer_file, const py::bytes& ciphertext) {
  auto params = decode_params(in(params_file));
  auto sigma = decode_ciphertext(in(ciphertext), params.g());
  UnsigncryptOutcome m;
  if (mode_of(mode) == Direction::kPchs) {
    m = pchs_unsigncrypt(params, decode_clc_keypair(in(key_file), params), decode_pki_public(in(peer_file), params), sigma);
  } else {
    m = cphs_unsigncrypt(params, decode_pki_keypair(in(key_file), params), decode_clc_public(in(peer_file), params), sigma);
  }
  if (!m) return py::none();
  return out(*m);
}

py::dict counts_dict(const OpCounter& c) {
  py::dict d;
  d["scalar_mults"] = c.scalar_mults;
  d["group_adds"] = c.group_adds;
  d["hash_calls"] = c.hash_calls;
  return d;
}

py::dict py_op_counts(const std::string& group) {
  SystemRandom rng;
  py::dict d;
  for (const auto& row : measure_op_counts(make_group(group), rng)) d[py::str(row.algorithm)] = counts_dict(row.counts);
  return d;
}

py::dict py_bench(const std::string& group, std::size_t iterations, std::size_t algorithm_iterations) {
  if (iterations == 0 || algorithm_iterations == 0) throw py::value_error("iterations must be at least 1");
  SystemRandom rng;
  BenchConfig config;
  config.primitive_iterations = iterations;
  config.algorithm_iterations = algorithm_iterations;
  BenchReport report;
  {
    py::gil_scoped_release release;
    report = bench_run(make_group(group), config, rng);
  }
  py::dict timings;
  for (const auto& t : report.timings) {
    py::dict row;
    row["iterations"] = t.iterations;
    row["mean_us"] = t.mean_us;
    row["median_us"] = t.median_us;
    timings[py::str(t.operation)] = row;
  }
  py::dict ops;
  for (const auto& row : report.op_counts) ops[py::str(row.algorithm)] = counts_dict(row.counts);
  py::dict d;
  d["group"] = report.group;
  d["timings"] = timings;
  d["op_counts"] = ops;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hsc, m) {
  m.doc() = "Heterogeneous PKI/CLC signcryption";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DecodeError>(m, "DecodeError", base.ptr());
  py::register_exception<AuthenticityError>(m, "AuthenticityError", base.ptr());
  py::register_exception<DegenerateKeyError>(m, "DegenerateKeyError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());

  m.attr("DEFAULT_GROUP") = std::string(kDefaultGroup);

  m.def("setup", &py_setup, py::arg("group") = std::string(kDefaultGroup), py::arg("n_bits") = 8 * 1024,
        py::arg("l_bits") = 128, "Returns (params, master_key) file bytes.");
  m.def("pki_keygen", &py_pki_keygen, py::arg("params"));
  m.def("clc_extract", &py_clc_extract, py::arg("params"), py::arg("master"), py::arg("id"),
        "PKG side: partial private key file for an identity.");
  m.def("verify_partial_key", &py_verify_partial, py::arg("params"), py::arg("partial"));
  m.def("clc_finalize", &py_clc_finalize, py::arg("params"), py::arg("partial"),
        "Verifies the partial key and returns a CLC private key file.");
  m.def("export_public", &py_export_public, py::arg("params"), py::arg("key"));
  m.def("signcrypt", &py_signcrypt, py::arg("params"), py::arg("mode"), py::arg("key"), py::arg("peer"),
        py::arg("message"));
  m.def("unsigncrypt", &py_unsigncrypt, py::arg("params"), py::arg("mode"), py::arg("key"), py::arg("peer"),
        py::arg("ciphertext"), "Plaintext bytes, or None when the ciphertext is rejected.");
  m.def("ciphertext_size", [](const std::string& group, std::size_t n) { return ciphertext_size(*make_group(group), n); },
        py::arg("group"), py::arg("message_len"));
  m.def("op_counts", &py_op_counts, py::arg("group") = std::string(kDefaultGroup));
  m.def("bench", &py_bench, py::arg("group") = std::string(kDefaultGroup), py::arg("iterations") = 1000,
        py::arg("algorithm_iterations") = 100);
}

#include "hsc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <numeric>
#include <stdexcept>

#include "hsc/errors.hpp"
#include "hsc/signcryption.hpp"

namespace hsc {

namespace {

constexpr std::size_t kPool = 64;
constexpr std::string_view kBenchId = "bench-receiver";

template <typename Fn>
TimingRow time_op(std::string name, std::size_t iterations, Fn&& fn) {
  using clock = std::chrono::steady_clock;
  std::vector<double> samples;
  samples.reserve(iterations);
  for (std::size_t i = 0; i < iterations; ++i) {
    auto start = clock::now();
    fn(i);
    auto stop = clock::now();
    samples.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
  }
  TimingRow row{std::move(name), iterations, 0, 0};
  if (!samples.empty()) {
    row.mean_us = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    auto mid = samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2);
    std::nth_element(samples.begin(), mid, samples.end());
    row.median_us = *mid;
  }
  return row;
}

struct Fixture {
  SystemParams params;
  MasterKey master;
  PkiKeyPair pki;
  ClcKeyPair clc;
  BoundClcPublicKey clc_bound;
};

Fixture make_fixture(std::shared_ptr<const Group> group, RandomSource& rng) {
  auto [params, master] = setup(std::move(group), 8 * 1024, 128, rng);
  PkiKeyPair pki = pki_keygen(params, rng);
  ClcKeyPair clc = clc_finalize(params, clc_extract_partial(params, master, to_bytes(kBenchId), rng), rng);
  BoundClcPublicKey bound = bind_clc_public_key(params, clc.public_part());
  return {std::move(params), std::move(master), std::move(pki), std::move(clc), std::move(bound)};
}

Bytes random_message(RandomSource& rng, std::size_t len) {
  Bytes m(len);
  rng.fill(m);
  return m;
}

}  // namespace

const TimingRow& BenchReport::timing(std::string_view operation) const {
  for (const auto& row : timings) {
    if (row.operation == operation) return row;
  }
  throw std::out_of_range("no timing row " + std::string(operation));
}

const OpCounter& BenchReport::op_count(std::string_view algorithm) const {
  for (const auto& row : op_counts) {
    if (row.algorithm == algorithm) return row.counts;
  }
  throw std::out_of_range("no op-count row " + std::string(algorithm));
}

void BenchReport::print_table(std::ostream& os) const {
  os << "group: " << group << "\n\n";
  os << std::left << std::setw(24) << "operation" << std::right << std::setw(10) << "iters" << std::setw(14)
     << "mean (us)" << std::setw(14) << "median (us)" << '\n';
  auto flags = os.flags();
  os << std::fixed << std::setprecision(3);
  for (const auto& t : timings) {
    os << std::left << std::setw(24) << t.operation << std::right << std::setw(10) << t.iterations << std::setw(14)
       << t.mean_us << std::setw(14) << t.median_us << '\n';
  }
  os.flags(flags);
  os << '\n' << std::left << std::setw(24) << "algorithm" << std::right << std::setw(6) << "S" << std::setw(6) << "A"
     << std::setw(6) << "H" << '\n';
  for (const auto& c : op_counts) {
    os << std::left << std::setw(24) << c.algorithm << std::right << std::setw(6) << c.counts.scalar_mults
       << std::setw(6) << c.counts.group_adds << std::setw(6) << c.counts.hash_calls << '\n';
  }
}

void BenchReport::write_rows(std::ostream& os) const {
  os << "kind,name,group,iterations,mean_us,median_us,scalar_mults,group_adds,hash_calls\n";
  auto flags = os.flags();
  os << std::fixed << std::setprecision(4);
  for (const auto& t : timings) {
    os << "timing," << t.operation << ',' << group << ',' << t.iterations << ',' << t.mean_us << ',' << t.median_us
       << ",,,\n";
  }
  for (const auto& c : op_counts) {
    os << "ops," << c.algorithm << ',' << group << ",,,," << c.counts.scalar_mults << ',' << c.counts.group_adds << ','
       << c.counts.hash_calls << '\n';
  }
  os.flags(flags);
}

std::vector<OpCountRow> measure_op_counts(std::shared_ptr<const Group> group, RandomSource& rng) {
  std::vector<OpCountRow> rows;
  const Bytes id = to_bytes(kBenchId);
  const Bytes m = random_message(rng, 32);

  SystemParams params;
  MasterKey master;
  PkiKeyPair pki;
  ClcPartialKey partial;
  ClcKeyPair clc;
  {
    CountingScope scope;
    auto result = setup(std::move(group), 8 * 1024, 128, rng);
    params = std::move(result.params);
    master = std::move(result.master);
    pki = pki_keygen(params, rng);
    partial = clc_extract_partial(params, master, id, rng);
    for (;;) {
      try {
        clc = clc_assemble(params, partial, clc_secret_value(params, rng));
        break;
      } catch (const DegenerateKeyError&) {
      }
    }
    rows.push_back({"key_generation", scope.counts()});
  }
  {
    CountingScope scope;
    (void)verify_partial_key(params, partial);
    rows.push_back({"partial_key_validation", scope.counts()});
  }
  BoundClcPublicKey bound;
  {
    CountingScope scope;
    bound = bind_clc_public_key(params, clc.public_part());
    rows.push_back({"receiver_binding", scope.counts()});
  }
  Ciphertext pchs;
  {
    CountingScope scope;
    pchs = pchs_signcrypt(params, pki, bound, m, rng);
    rows.push_back({"pchs_signcrypt", scope.counts()});
  }
  {
    CountingScope scope;
    (void)pchs_unsigncrypt(params, clc, pki.public_part(), pchs);
    rows.push_back({"pchs_unsigncrypt", scope.counts()});
  }
  Ciphertext cphs;
  {
    CountingScope scope;
    cphs = cphs_signcrypt(params, clc, pki.public_part(), m, rng);
    rows.push_back({"cphs_signcrypt", scope.counts()});
  }
  {
    CountingScope scope;
    (void)cphs_unsigncrypt(params, pki, bound, cphs);
    rows.push_back({"cphs_unsigncrypt", scope.counts()});
  }
  return rows;
}

BenchReport bench_run(std::shared_ptr<const Group> group, const BenchConfig& config, RandomSource& rng) {
  BenchReport report;
  report.group = group->name();
  report.config = config;
  report.op_counts = measure_op_counts(group, rng);

  Fixture fx = make_fixture(group, rng);
  const auto& g = fx.params.g();
  const auto& zq = fx.params.zq();

  std::vector<Scalar> scalars;
  std::vector<GroupElement> points;
  std::vector<Bytes> messages;
  for (std::size_t i = 0; i < kPool; ++i) {
    scalars.push_back(zq.random_nonzero(rng));
    points.push_back(g.mul_base(zq.random_nonzero(rng)));
    messages.push_back(random_message(rng, config.message_len));
  }
  auto pick = [](std::size_t i) { return i % kPool; };

  const std::size_t np = config.primitive_iterations;
  const std::size_t na = config.algorithm_iterations;

  report.timings.push_back(time_op("scalar_mult", np, [&](std::size_t i) {
    (void)g.mul(scalars[pick(i)], points[pick(i + 1)]);
  }));
  report.timings.push_back(time_op("scalar_mult_base", np, [&](std::size_t i) {
    (void)g.mul_base(scalars[pick(i)]);
  }));
  report.timings.push_back(time_op("group_add", np, [&](std::size_t i) {
    (void)g.add(points[pick(i)], points[pick(i + 1)]);
  }));
  std::vector<Bytes> hash_inputs;
  for (std::size_t i = 0; i < kPool; ++i) {
    hash_inputs.push_back(static_cast<const XofOracles&>(fx.params.h()).h2_input(messages[i], points[pick(i + 1)]));
  }
  report.timings.push_back(time_op("hash_to_scalar", np, [&](std::size_t i) {
    (void)hash_to_scalar(fx.params.hash.algorithm, zq, hash_inputs[pick(i)]);
  }));
  report.timings.push_back(time_op("h2_with_encoding", np, [&](std::size_t i) {
    (void)fx.params.h().h2(messages[pick(i)], points[pick(i + 1)]);
  }));

  report.timings.push_back(time_op("key_generation", na, [&](std::size_t) {
    (void)pki_keygen(fx.params, rng);
    auto partial = clc_extract_partial(fx.params, fx.master, to_bytes(kBenchId), rng);
    (void)clc_assemble(fx.params, partial, clc_secret_value(fx.params, rng));
  }));

  std::vector<Ciphertext> pchs;
  std::vector<Ciphertext> cphs;
  for (std::size_t i = 0; i < kPool; ++i) {
    pchs.push_back(pchs_signcrypt(fx.params, fx.pki, fx.clc_bound, messages[i], rng));
    cphs.push_back(cphs_signcrypt(fx.params, fx.clc, fx.pki.public_part(), messages[i], rng));
  }
  report.timings.push_back(time_op("pchs_signcrypt", na, [&](std::size_t i) {
    (void)pchs_signcrypt(fx.params, fx.pki, fx.clc_bound, messages[pick(i)], rng);
  }));
  report.timings.push_back(time_op("pchs_unsigncrypt", na, [&](std::size_t i) {
    (void)pchs_unsigncrypt(fx.params, fx.clc, fx.pki.public_part(), pchs[pick(i)]);
  }));
  report.timings.push_back(time_op("cphs_signcrypt", na, [&](std::size_t i) {
    (void)cphs_signcrypt(fx.params, fx.clc, fx.pki.public_part(), messages[pick(i)], rng);
  }));
  report.timings.push_back(time_op("cphs_unsigncrypt", na, [&](std::size_t i) {
    (void)cphs_unsigncrypt(fx.params, fx.pki, fx.clc_bound, cphs[pick(i)]);
  }));
  return report;
}

}  // namespace hsc

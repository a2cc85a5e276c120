#pragma once

#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hsc/group.hpp"
#include "hsc/keys.hpp"
#include "hsc/op_counter.hpp"

namespace hsc {

struct BenchConfig {
  std::size_t primitive_iterations = 10000;
  std::size_t algorithm_iterations = 1000;
  std::size_t message_len = 32;
};

struct TimingRow {
  std::string operation;
  std::size_t iterations = 0;
  double mean_us = 0;
  double median_us = 0;
};

struct OpCountRow {
  std::string algorithm;
  OpCounter counts;
};

struct BenchReport {
  std::string group;
  BenchConfig config;
  std::vector<TimingRow> timings;
  std::vector<OpCountRow> op_counts;

  /// Throws std::out_of_range for an unknown name.
  const TimingRow& timing(std::string_view operation) const;
  const OpCounter& op_count(std::string_view algorithm) const;

  void print_table(std::ostream& os) const;
  /// CSV with the fixed header
  /// kind,name,group,iterations,mean_us,median_us,scalar_mults,group_adds,hash_calls
  void write_rows(std::ostream& os) const;
};

/// Runs each algorithm once inside its own CountingScope. Rows:
/// key_generation (setup + PKI-KG + partial extract + key extract),
/// partial_key_validation, receiver_binding, pchs_signcrypt,
/// pchs_unsigncrypt, cphs_signcrypt, cphs_unsigncrypt. Signcrypt and
/// unsigncrypt rows use pre-bound CLC keys, so gamma = H1(ID, T) is counted
/// under receiver_binding.
std::vector<OpCountRow> measure_op_counts(std::shared_ptr<const Group> group, RandomSource& rng);

/// Times primitives (scalar_mult, scalar_mult_base, group_add,
/// hash_to_scalar) over primitive_iterations and the full algorithms over
/// algorithm_iterations, on a fresh setup over `group`.
BenchReport bench_run(std::shared_ptr<const Group> group, const BenchConfig& config, RandomSource& rng);

}  // namespace hsc

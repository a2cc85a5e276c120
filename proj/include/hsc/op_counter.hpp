#pragma once

#include <cstdint>
#include <ostream>

namespace hsc {

/// Tally of the operations Table-I-style cost accounting cares about.
struct OpCounter {
  std::uint64_t scalar_mults = 0;
  std::uint64_t group_adds = 0;
  std::uint64_t hash_calls = 0;

  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

std::ostream& operator<<(std::ostream& os, const OpCounter& c);

/// Counts group and hash operations performed on the current thread while
/// alive. Scopes nest: an operation is tallied in every enclosing scope.
/// Counters are thread-confined and never shared between threads.
class CountingScope {
 public:
  CountingScope();
  ~CountingScope();
  CountingScope(const CountingScope&) = delete;
  CountingScope& operator=(const CountingScope&) = delete;

  const OpCounter& counts() const { return counts_; }
  void reset() { counts_ = {}; }

 private:
  friend struct OpTally;
  OpCounter counts_;
  CountingScope* outer_;
};

/// Hooks called by group and hash implementations.
struct OpTally {
  static void scalar_mult();
  static void group_add();
  static void hash_call();
};

}  // namespace hsc

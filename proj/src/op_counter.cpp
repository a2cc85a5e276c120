#include "hsc/op_counter.hpp"

namespace hsc {

namespace {
thread_local CountingScope* active_scope = nullptr;
}  // namespace

CountingScope::CountingScope() : outer_(active_scope) { active_scope = this; }

CountingScope::~CountingScope() { active_scope = outer_; }

void OpTally::scalar_mult() {
  for (auto* s = active_scope; s != nullptr; s = s->outer_) ++s->counts_.scalar_mults;
}

void OpTally::group_add() {
  for (auto* s = active_scope; s != nullptr; s = s->outer_) ++s->counts_.group_adds;
}

void OpTally::hash_call() {
  for (auto* s = active_scope; s != nullptr; s = s->outer_) ++s->counts_.hash_calls;
}

std::ostream& operator<<(std::ostream& os, const OpCounter& c) {
  return os << "{S=" << c.scalar_mults << ", A=" << c.group_adds << ", H=" << c.hash_calls << "}";
}

}  // namespace hsc

#include "hsc/random.hpp"

#include <openssl/rand.h>

#include <climits>

#include "hsc/errors.hpp"

namespace hsc {

void SystemRandom::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    int chunk = static_cast<int>(std::min<std::size_t>(out.size() - done, INT_MAX));
    if (RAND_bytes(out.data() + done, chunk) != 1) throw EntropyError("RAND_bytes failed");
    done += static_cast<std::size_t>(chunk);
  }
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
  std::lock_guard lock(mu_);
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t word = engine_();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word >> (8 * b));
    }
  }
}

void ScriptedRandom::fill(std::span<std::uint8_t> out) {
  if (script_.size() < out.size()) throw EntropyError("scripted random source exhausted");
  for (auto& b : out) {
    b = script_.front();
    script_.pop_front();
  }
}

}  // namespace hsc

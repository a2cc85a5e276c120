#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <random>
#include <span>

#include "hsc/bytes.hpp"

namespace hsc {

/// Source of uniformly random bytes. Implementations must be safe for
/// concurrent draws if they are shared between threads.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  /// Fills `out` completely or throws EntropyError.
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// Operating-system CSPRNG (OpenSSL RAND_bytes).
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

/// Deterministic stream for reproducible runs. Not for production keys.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mutex mu_;
  std::mt19937_64 engine_;
};

/// Replays a fixed byte script, then fails. Used to force exact nonces
/// and key values in hand-checked vectors.
class ScriptedRandom final : public RandomSource {
 public:
  ScriptedRandom() = default;
  explicit ScriptedRandom(ByteView script) : script_(script.begin(), script.end()) {}

  void push(ByteView bytes) { script_.insert(script_.end(), bytes.begin(), bytes.end()); }
  std::size_t remaining() const { return script_.size(); }
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::deque<std::uint8_t> script_;
};

}  // namespace hsc

#pragma once

#include <cstdint>
#include <random>

namespace hctps {

/// Seeded generator with a portable draw protocol.
///
/// The engine is std::mt19937_64 seeded with a single 64-bit value; its output
/// sequence is fixed by the standard. The standard distributions are not, so
/// every derived draw is defined here:
///   - next_u64:     one engine output.
///   - bit:          top bit of one engine output.
///   - uniform01:    top 53 bits of one engine output scaled by 2^-53, in [0, 1).
///   - index(n):     Lemire multiply-shift with rejection; one or more outputs.
///   - bernoulli(p): uniform01() < p, always consuming exactly one output.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  bool bit() { return (engine_() >> 63U) != 0U; }

  double uniform01() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t index(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64U);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to spread experiment seeds across phases.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

}  // namespace hctps

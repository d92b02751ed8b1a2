#pragma once

// Seeded randomness with a platform-independent output sequence: the engine
// is std::mt19937_64 (fully specified by the standard) and bounded draws use
// our own rejection sampling rather than std::uniform_int_distribution.

#include <cstdint>
#include <random>
#include <stdexcept>

#include "fatpoints/field.hpp"

namespace fatpoints {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for attempt `index` of a retry loop started from `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  long long uniform(long long lo, long long hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long long>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<long long>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

/// Random prime in [2^30, 2^31).
inline std::uint64_t random_prime31(Rng& rng) {
  for (;;) {
    std::uint64_t candidate = static_cast<std::uint64_t>(rng.uniform(1LL << 30, (1LL << 31) - 1)) | 1;
    while (candidate < (1ULL << 31)) {
      if (is_prime(candidate)) return candidate;
      candidate += 2;
    }
  }
}

}  // namespace fatpoints

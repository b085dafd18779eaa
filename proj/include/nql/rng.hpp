#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nql {

inline constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seed of the stream owned by (grid_index, trial_index) under a master seed.
///
/// This mapping is part of the output contract: every trial draws only from
/// its own stream, so sweep results are byte-identical for any worker count.
/// Changing this function changes every logged trial.
inline constexpr uint64_t child_seed(uint64_t master_seed, uint64_t grid_index,
                                     uint64_t trial_index) {
  uint64_t h = splitmix64(master_seed ^ splitmix64(grid_index + 0x9d1cull));
  return splitmix64(h ^ splitmix64(trial_index + 0x51ed2701ull));
}

/// mt19937_64 core with pinned output mappings.
///
/// std::uniform_real_distribution and friends are implementation-defined, so
/// all draws go through the helpers below; the full sequence for a given seed
/// is identical on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}

  uint64_t u64() { return eng_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform k-bit word, k in [0, 64].
  uint64_t bits(int k) {
    if (k <= 0) return 0;
    return k >= 64 ? u64() : (u64() >> (64 - k));
  }

  /// Uniform in {0, ..., n-1}, unbiased (rejection from the top).
  uint64_t below(uint64_t n) {
    const uint64_t limit = n * (UINT64_MAX / n);
    uint64_t v = u64();
    while (v >= limit) v = u64();
    return v % n;
  }

  /// Standard normal via Box-Muller; the paired variate is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nql

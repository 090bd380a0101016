#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace snowsim {

/// SplitMix64 step, used only to whiten seed material.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. Every trial gets its own stream derived from
/// (seed, trial_index), so results do not depend on scheduling or thread
/// count. All randomness in the library flows through an explicitly passed
/// RandomStream; there is no hidden global state.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : gen_(whiten(seed)) {}

  static RandomStream for_trial(uint64_t seed, uint64_t trial_index) {
    uint64_t s = seed;
    uint64_t a = splitmix64(s);
    s = seed ^ (0xD1B54A32D192ED03ULL * (trial_index + 1));
    uint64_t b = splitmix64(s);
    return RandomStream(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
  }

  uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return std::ldexp(static_cast<double>(gen_() >> 11), -53);
  }

  /// Exact for p = 0 and p = 1; otherwise thresholds one raw 64-bit draw.
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return gen_() < static_cast<uint64_t>(std::ldexp(p, 64));
  }

  /// Uniform integer in [0, n). n must be > 0.
  uint64_t below(uint64_t n) {
    std::uniform_int_distribution<uint64_t> d(0, n - 1);
    return d(gen_);
  }

 private:
  static uint64_t whiten(uint64_t seed) {
    uint64_t s = seed;
    return splitmix64(s);
  }
  std::mt19937_64 gen_;
};

}  // namespace snowsim

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace lrp {

// All randomness in the library flows through RandomStream so that runs are
// reproducible bit-for-bit across platforms and thread schedules. The
// generator is xoshiro256** seeded through splitmix64; uniforms take the top
// 53 bits; Gaussians use the Marsaglia polar method with a cached spare.
// Streams for independent work units are derived from (seed, path...) with
// derive(), never shared between units.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  /// Stream for a work unit addressed by (seed, path...); each path element
  /// is folded in with the splitmix64 finalizer.
  static RandomStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t z = seed;
    for (std::uint64_t p : path) {
      std::uint64_t x = z ^ p;
      z = splitmix64(x);
    }
    return RandomStream(z);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// One fair bit (top bit of the next word).
  int bit() { return static_cast<int>(next_u64() >> 63); }

  /// Unbiased uniform integer in [0, bound) by rejection.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t min = (0 - bound) % bound;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r < min);
    return r % bound;
  }

  /// Standard normal via the polar method; the second value of each accepted
  /// pair is cached and returned on the following call.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lrp

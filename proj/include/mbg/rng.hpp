#pragma once

#include <cstdint>

namespace mbg {

/// Identifies one reproducible random stream. The mapping
/// (base_seed, stream_index) -> generator state is fixed and platform
/// independent; see the functions below for the exact derivation.
struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;
};

/// SplitMix64 output function (Steele, Lea, Flood). Bijective on 64-bit words.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// One SplitMix64 step: advances `state` by the golden-ratio increment and
/// returns the mixed previous value.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  return splitmix64_mix(state);
}

/// Stream derivation: the 64-bit seed of stream k under base seed s is
///   s XOR splitmix64_mix(k * 0x9E3779B97F4A7C15).
/// Distinct stream indices therefore map to decorrelated seeds while
/// stream 0 of base seed s keeps a simple relationship to s itself.
inline std::uint64_t derive_stream_seed(const SeedSpec& seed) {
  return seed.base_seed ^ splitmix64_mix(seed.stream_index * 0x9E3779B97F4A7C15ULL);
}

/// xoshiro256** 1.0 (Blackman, Vigna), seeded through SplitMix64 so that any
/// 64-bit seed, including zero, yields a valid nonzero state.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed64) {
    std::uint64_t sm = seed64;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  explicit Xoshiro256StarStar(const SeedSpec& seed)
      : Xoshiro256StarStar(derive_stream_seed(seed)) {}

  std::uint64_t next() {
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

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). Rejection sampling, exactly unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace mbg

#pragma once

#include <cstdint>
#include <limits>

namespace barw {

// SplitMix64 step; used to expand seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256** generator. Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

// Stream for trial `index` under `seed`. Depends only on the pair, so the
// schedule of trials across workers cannot change any draw.
RandomStream stream_for(std::uint64_t seed, std::uint64_t index);

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(RandomStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1).
inline double uniform_open01(RandomStream& rng) {
  return (static_cast<double>(rng() >> 12) + 0.5) * 0x1.0p-52;
}

// Unbiased integer in [0, bound), bound > 0 (Lemire's method).
std::uint64_t uniform_below(RandomStream& rng, std::uint64_t bound);

}  // namespace barw

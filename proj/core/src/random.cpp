#include "barw/random.hpp"

namespace barw {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& w : s_) w = splitmix64(sm);
}

RandomStream stream_for(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t a = seed;
  std::uint64_t key = splitmix64(a);
  std::uint64_t b = index ^ 0x6a09e667f3bcc909ULL;
  key ^= splitmix64(b);
  return RandomStream(key);
}

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t uniform_below(RandomStream& rng, std::uint64_t bound) {
  u128 m = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace barw

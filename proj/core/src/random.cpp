#include "lgp/random.hpp"

#include <cassert>
#include <limits>

namespace lgp {
namespace {

std::uint64_t avalanche(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
  std::uint64_t h = avalanche(seed);
  h = avalanche(h ^ a);
  h = avalanche(h ^ b);
  h = avalanche(h ^ c);
  return h;
}

RngStream RngStream::derive(std::uint64_t seed, std::uint64_t a,
                            std::uint64_t b, std::uint64_t c) {
  return RngStream(mix_seed(seed, a, b, c));
}

double RngStream::uniform() {
  // 53 random bits scaled into [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int RngStream::uniform_below(int n) {
  assert(n > 0);
  const auto bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int>(x % bound);
}

int RngStream::uniform_range(int lo, int hi) {
  assert(lo <= hi);
  return lo + uniform_below(hi - lo + 1);
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace lgp

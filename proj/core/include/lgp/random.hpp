#pragma once

#include <cstdint>
#include <random>

namespace lgp {

/// Deterministic pseudorandom stream. Identical seeds yield identical draw
/// sequences on every platform (the mt19937_64 sequence is pinned by the
/// standard; the bounded draws below avoid the library-defined distributions,
/// whose output differs between standard library implementations).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Substream deterministically derived from a seed and up to three indices.
  /// Used to give each fitness evaluation its own stream so parallel and
  /// serial schedules produce identical results.
  static RngStream derive(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform real in [0, 1).
  double uniform();

  /// Uniform integer in [0, n). Requires n > 0. Unbiased (rejection sampling).
  int uniform_below(int n);

  /// Uniform integer in [lo, hi], both ends inclusive.
  int uniform_range(int lo, int hi);

  /// True with probability p.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

/// splitmix64-style avalanche; combines seed material for substreams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0);

/// One-shot seed from system entropy, for configs that leave the seed unset.
std::uint64_t entropy_seed();

}  // namespace lgp

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace evonet {

/// Seedable, portable PRNG: xoshiro256** seeded through SplitMix64.
///
/// All derived quantities (doubles, bounded integers, Bernoulli draws,
/// shuffles) are specified here rather than delegated to <random>
/// distributions, so a given seed produces the same stream on every
/// platform and standard library.
///
/// Stream splitting: substream(master, {a, b, ...}) hashes the path of
/// integer labels into an independent seed. Experiments give each
/// repetition (and each component within a repetition) its own label path,
/// so repetitions can run in parallel and a change in one component does
/// not shift the draws of another.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static std::uint64_t derive_seed(std::uint64_t master,
                                   std::initializer_list<std::uint64_t> path);
  static Rng substream(std::uint64_t master,
                       std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform integer in [0, n). n must be > 0. Unbiased (rejection sampling).
  std::uint64_t uniform_below(std::uint64_t n);

  /// True with probability p. Consumes exactly one double.
  bool bernoulli(double p);

  /// Fisher-Yates shuffle, in place.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace evonet

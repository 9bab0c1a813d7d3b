#include "evonet/rng.hpp"

namespace evonet {

namespace {

constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& x) {
  x += kSplitMixGamma;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t Rng::derive_seed(std::uint64_t master,
                               std::initializer_list<std::uint64_t> path) {
  std::uint64_t x = master;
  std::uint64_t acc = splitmix64(x);
  for (std::uint64_t label : path) {
    x = acc ^ (label * kSplitMixGamma);
    acc = splitmix64(x);
  }
  return acc;
}

Rng Rng::substream(std::uint64_t master,
                   std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(master, path));
}

std::uint64_t Rng::next_u64() {
  // xoshiro256** step (Blackman / Vigna).
  std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  // Rejection below the largest multiple of n, so every value is equally
  // likely regardless of n.
  std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v >= threshold) return v % n;
  }
}

bool Rng::bernoulli(double p) { return next_double() < p; }

}  // namespace evonet

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace spineout {

// Seedable random stream. Built on mt19937_64 (whose output sequence is fixed
// by the standard) with our own distribution code, so a seed produces the same
// numbers on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). n must be > 0.
  std::size_t index(std::size_t n);

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal (Box-Muller, no caching).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Mixes a parent seed with a list of stream identifiers (splitmix64 chain).
// Used to give every cell, fold and tree its own independent stream.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> parts);

}  // namespace spineout

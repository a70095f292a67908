#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "modgraph/numbers.hpp"

namespace modgraph {

// Reproducible stream: mt19937_64 seeded through seed_seq from (seed, stream).
// Bounded draws use our own rejection so results do not depend on the standard library.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_MAX; }
  result_type operator()() { return engine_(); }

  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  BigInt below(const BigInt& bound);
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p);

  // Fisher-Yates on the first `count` positions: they become a uniform ordered sample.
  template <class T>
  void partial_shuffle(std::vector<T>& items, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(items.size() - i));
      std::swap(items[i], items[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::vector<std::uint64_t> limbs_;
};

}  // namespace modgraph

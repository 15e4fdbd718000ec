#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace craft {

// Deterministic sampling helpers on top of std::mt19937_64.
//
// The standard <random> distributions are implementation-defined, so two
// standard libraries can produce different streams from the same engine.
// Every sampled value in this project must be reproducible from a 64-bit
// seed alone, so the samplers below are spelled out explicitly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of randomness.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform real in [lo, hi). Requires lo <= hi.
  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Uniform integer in [lo, hi], inclusive. Unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    if (span == 0) return static_cast<std::int64_t>(engine_());  // full range
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return lo + static_cast<std::int64_t>(v % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Fisher-Yates shuffle, driven by uniform_int for reproducibility.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace craft

// Small deterministic RNG used everywhere randomness is needed.
// SplitMix64 streams keyed by (seed, stream) give reproducible,
// platform-independent draws; std:: distributions are avoided because
// their outputs are not pinned by the standard.

#pragma once

#include <cstdint>

#include "rsc/probability.hpp"

namespace rsc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(splitmix64(seed ^ splitmix64(stream))) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Inverse-CDF draw from a finite distribution.
  int sample(const Dist& d) {
    double u = next_double();
    double cum = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      cum += d[i];
      if (u < cum) return i;
    }
    return d.size() - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace rsc

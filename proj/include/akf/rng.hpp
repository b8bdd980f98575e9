#pragma once

#include <cmath>
#include <cstdint>

namespace akf {

// splitmix64: tiny, portable, and good enough for Monte Carlo coefficients.
// Used instead of <random> engines so that fixed-seed output is identical
// across standard libraries.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1p-53;
  }
};

// Independent per-stream seed derivation (samples are indexed streams).
inline std::uint64_t derive_stream_seed(std::uint64_t seed,
                                        std::uint64_t index) {
  SplitMix64 mix(seed ^ (0xA24BAED4963EE407ULL * (index + 1)));
  mix.next();
  return mix.next();
}

// Standard normal draws via Box-Muller, one spare cached.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = rng_.uniform();
    double u2 = rng_.uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  SplitMix64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace akf

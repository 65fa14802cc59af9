#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace finsler {

/// Seeded generator with a platform-independent mapping to doubles, so that
/// equal seeds give equal samples on every standard library.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace finsler

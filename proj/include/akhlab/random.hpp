#pragma once

#include <cstdint>
#include <random>

#include "akhlab/spectral.hpp"

namespace akhlab {

/// The single pseudo-random source for perturbations. Uniform deviates are
/// built from raw mt19937_64 bits so sequences do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/53-bit-uniform";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Random field with modes |n| <= max_mode, coefficients damped like
/// 1/(1+n^2), rescaled to the requested rms norm.
SampledField random_band_limited(const PeriodicGrid& grid, int max_mode, double rms, Rng& rng);

}  // namespace akhlab

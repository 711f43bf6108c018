#include "akhlab/random.hpp"

#include <stdexcept>
#include <vector>

namespace akhlab {

SampledField random_band_limited(const PeriodicGrid& grid, int max_mode, double rms, Rng& rng) {
  if (max_mode < 0 || max_mode >= static_cast<int>(grid.size() / 2)) {
    throw std::invalid_argument("max_mode must be in [0, n/2)");
  }
  Spectrum sp(grid, std::vector<Complex>(grid.size()));
  for (int n = -max_mode; n <= max_mode; ++n) {
    const double damp = 1.0 / (1.0 + static_cast<double>(n) * n);
    sp.coeff(n) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * damp;
  }
  SampledField f = inverse(sp);
  const double norm = rms_norm(f);
  if (norm == 0.0) return f;
  return f * Complex(rms / norm, 0.0);
}

}  // namespace akhlab

#pragma once

#include "akhlab/breather.hpp"
#include "akhlab/spectral.hpp"

namespace akhlab {

// Conserved quantities of periodic focusing NLS, by spectral quadrature over
// one period of the field's grid.

/// M[u] = int (|u|^2 - 1).
double mass(const SampledField& f);

/// E[u] = int |u_x|^2 - (|u|^2 - 1)^2 / 2.
double energy(const SampledField& f);

/// F[u] = int |u_xx|^2 - 3(|u|^2-1)|u_x|^2 - ((|u|^2)_x)^2 / 2 + (|u|^2-1)^3 / 2.
/// (|u|^2)_x is differentiated spectrally from the sampled |u|^2.
double f_functional(const SampledField& f);

/// H = F - alpha^2 E; `multiplier` scales alpha^2 (1 for the true functional).
double h_functional(const SampledField& f, const AkhmedievParams& p, double multiplier = 1.0);
double h_functional(const SampledField& f, double alpha2);

struct FunctionalReport {
  double mass = 0.0;
  double energy = 0.0;
  double f_value = 0.0;
  double h_value = 0.0;  // f_value - alpha2 * energy
  double alpha2 = 0.0;
  std::size_t grid_points = 0;
  double field_time = 0.0;
};

FunctionalReport evaluate_functionals(const SampledField& f, double alpha2, double time);

/// Integrals of the absolute values of each functional's integrand terms. The
/// breather has M = E = 0, so drifts are measured against these instead.
struct FunctionalScales {
  double mass = 0.0;    // int |u|^2
  double energy = 0.0;  // int |u_x|^2 + (|u|^2-1)^2 / 2
};

FunctionalScales functional_scales(const SampledField& f);

}  // namespace akhlab

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "akhlab/breather.hpp"
#include "akhlab/spectral.hpp"

namespace akhlab {

/// Coefficients below this fraction of the spectral peak are treated as
/// sampling roundoff and cut before differentiating four times.
inline constexpr double kDerivativeNoiseFloor = 1e-16;

/// Tail above this fraction of the peak means the grid does not resolve
/// the field.
inline constexpr double kUnderResolvedTail = 1e-10;

struct OdeResidual {
  SampledField field;
  bool under_resolved = false;
  int retained_modes = 0;  // |n| below this were kept
};

/// Applies the fourth-order operator
///   u_4x + 3 u_x^2 conj(u) + (4|u|^2 - 3) u_xx + u^2 conj(u_xx) + 2|u_x|^2 u
///   + 3/2 (|u|^2 - 1)^2 u + alpha^2 (u_xx + (|u|^2 - 1) u)
/// with spectral derivatives, to any sampled field.
OdeResidual ode_operator(const SampledField& u, double alpha2);

/// The operator applied to A(t, .) sampled on `grid` (length must be the
/// breather period).
OdeResidual ode_lhs(const AkhmedievParams& p, double t, const PeriodicGrid& grid);

struct ResidualReport {
  AkhmedievParams params;
  double time = 0.0;
  double sup_norm = 0.0;
  double l2_norm = 0.0;
  std::size_t grid_points = 0;
  bool under_resolved = false;
};

ResidualReport residual_report(const AkhmedievParams& p, double t, std::size_t n_points);

/// Operator value at a single point (t, x), from a spectral grid whose first
/// node sits at x. Sampling, transform and derivatives run in long double.
/// `scale` is the sum of the magnitudes of the individual operator terms
/// there, i.e. the size of what cancels.
struct PointResidual {
  Complex value;
  double scale = 0.0;
};

PointResidual ode_at_point(const AkhmedievParams& p, double t, double x, std::size_t n_points = 512);

/// R_i, i in 1..6, from the closed-form M, N factors.
Complex evaluate_R(const AkhmedievParams& p, int i, double t, double x);

/// e^{it} / N^5 * sum_i R_i.
Complex appendix_sum(const AkhmedievParams& p, double t, double x);

struct StationarityResult {
  std::vector<double> eps;
  std::vector<double> delta;  // |H[A + eps w] - H[A]|
  double slope = 0.0;         // least-squares slope of log delta vs log eps
  bool vanishes_to_roundoff = false;
  double h_reference = 0.0;

  /// Slope >= 1.9, or nothing measurable above roundoff.
  bool passes(double min_slope = 1.9) const {
    return vanishes_to_roundoff || slope >= min_slope;
  }
};

/// Fits the convergence order of H[A + eps w] -> H[A] at time t. `multiplier`
/// scales the alpha^2 in H (1 is the true functional; 2 is a control whose
/// first variation does not vanish).
StationarityResult h_stationarity(const AkhmedievParams& p, double t, const SampledField& w,
                                  const std::vector<double>& eps_list, double multiplier = 1.0);

/// eps_k = first * ratio^k for k = 0..count-1.
std::vector<double> geometric_eps(double first, double ratio, int count);

}  // namespace akhlab

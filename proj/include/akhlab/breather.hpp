#pragma once

#include <complex>

namespace akhlab {

using Complex = std::complex<double>;

/// Parameter bundle of the Akhmediev breather. Everything derives from `a`;
/// the phase is stored as the unit complex number e^{i theta}, never as an
/// angle.
struct AkhmedievParams {
  double a = 0.25;
  double alpha = 1.0;         // spatial sideband wavenumber, alpha^2 = 2(1-2a)
  double beta = 1.0;          // temporal rate, beta^2 = 8a(1-2a)
  Complex phase_factor{0.0, -1.0};  // 1 - alpha^2 - i beta
  double period = 0.0;        // 2 pi / alpha

  double sqrt_2a() const;
  double alpha2() const { return alpha * alpha; }
};

/// Throws std::domain_error unless 0 < a < 1/2.
AkhmedievParams derive_params(double a);

/// A(t, x) in closed form. Switches to the cosh-normalized form for
/// |beta t| > 350 so nothing overflows.
Complex akhmediev(const AkhmedievParams& p, double t, double x);

/// The Stokes wave phase * e^{it}.
Complex stokes(double t, Complex phase);

/// Q(t, x) with A = e^{it}(e^{i theta} + Q), written in the normalized form
/// that stays finite for large t.
Complex q_value(const AkhmedievParams& p, double t, double x);

/// Closed form of dQ/dx.
Complex q_x_value(const AkhmedievParams& p, double t, double x);

/// M(t) = alpha^2 cosh(beta t) + i beta sinh(beta t) and
/// N(t, x) = sqrt(2a) cos(alpha x) - cosh(beta t), with every partial that is
/// not identically zero. M depends on t only and N is separable, so
/// M_x, M_xx, M_xt, M_xxt, N_xt and N_xxt all vanish.
struct AppendixFactors {
  Complex M;
  double N = 0.0;
  Complex M_t;
  double N_t = 0.0;
  double N_x = 0.0;
  double N_xx = 0.0;
  double N_xxx = 0.0;
  double N_xxxx = 0.0;
};

AppendixFactors appendix_factors(const AkhmedievParams& p, double t, double x);

}  // namespace akhlab

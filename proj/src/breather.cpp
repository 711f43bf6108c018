#include "akhlab/breather.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace akhlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Above this |beta t| we divide through by cosh(beta t) before evaluating.
constexpr double kNormalizeThreshold = 350.0;

}  // namespace

double AkhmedievParams::sqrt_2a() const { return std::sqrt(2.0 * a); }

AkhmedievParams derive_params(double a) {
  if (!(a > 0.0 && a < 0.5)) {
    throw std::domain_error("breather parameter a must lie in (0, 1/2), got " +
                            std::to_string(a));
  }
  AkhmedievParams p;
  p.a = a;
  p.alpha = std::sqrt(2.0 * (1.0 - 2.0 * a));
  p.beta = std::sqrt(8.0 * a * (1.0 - 2.0 * a));
  // 1 - alpha^2 = 4a - 1 exactly; using it avoids a cancellation.
  p.phase_factor = Complex(4.0 * a - 1.0, -p.beta);
  p.period = kTwoPi / p.alpha;
  return p;
}

Complex akhmediev(const AkhmedievParams& p, double t, double x) {
  const double bt = p.beta * t;
  const double cx = std::cos(p.alpha * x);
  const Complex carrier = std::polar(1.0, t);
  if (std::abs(bt) > kNormalizeThreshold) {
    const Complex num(p.alpha2(), p.beta * std::tanh(bt));
    const double den = p.sqrt_2a() * cx / std::cosh(bt) - 1.0;
    return carrier * (1.0 + num / den);
  }
  const double ch = std::cosh(bt);
  const Complex num(p.alpha2() * ch, p.beta * std::sinh(bt));
  const double den = p.sqrt_2a() * cx - ch;
  return carrier * (1.0 + num / den);
}

Complex stokes(double t, Complex phase) { return phase * std::polar(1.0, t); }

Complex q_value(const AkhmedievParams& p, double t, double x) {
  const double bt = p.beta * t;
  const double d = 1.0 - p.sqrt_2a() * std::cos(p.alpha * x) / std::cosh(bt);
  return {p.alpha2() * (1.0 - 1.0 / d), p.beta * (1.0 - std::tanh(bt) / d)};
}

Complex q_x_value(const AkhmedievParams& p, double t, double x) {
  const double bt = p.beta * t;
  const double ch = std::cosh(bt);
  const double sx = std::sin(p.alpha * x);
  const double d = 1.0 - p.sqrt_2a() * std::cos(p.alpha * x) / ch;
  const double s = p.sqrt_2a();
  const double re = p.alpha2() * p.alpha * s * sx / (ch * d * d);
  const double im = p.alpha * p.beta * s * std::tanh(bt) * sx / (ch * d * d);
  return {re, im};
}

AppendixFactors appendix_factors(const AkhmedievParams& p, double t, double x) {
  const double bt = p.beta * t;
  const double ch = std::cosh(bt);
  const double sh = std::sinh(bt);
  const double ax = p.alpha * x;
  const double s = p.sqrt_2a();
  const double al = p.alpha;
  const double b = p.beta;

  AppendixFactors f;
  f.M = Complex(p.alpha2() * ch, b * sh);
  f.N = s * std::cos(ax) - ch;
  f.M_t = Complex(p.alpha2() * b * sh, b * b * ch);
  f.N_t = -b * sh;
  f.N_x = -s * al * std::sin(ax);
  f.N_xx = -s * al * al * std::cos(ax);
  f.N_xxx = s * al * al * al * std::sin(ax);
  f.N_xxxx = s * al * al * al * al * std::cos(ax);
  return f;
}

}  // namespace akhlab

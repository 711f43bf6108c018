#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using C = std::complex<double>;

inline double alpha(double a) { return std::sqrt(2.0 * (1.0 - 2.0 * a)); }
inline double beta(double a) { return std::sqrt(8.0 * a * (1.0 - 2.0 * a)); }
inline double period(double a) { return 2.0 * M_PI / alpha(a); }
inline C theta(double a) { return C(1.0 - alpha(a) * alpha(a), -beta(a)); }

// Closed form written out directly, no library code involved.
inline C breather(double a, double t, double x) {
  const double al = alpha(a), be = beta(a);
  const C num(al * al * std::cosh(be * t), be * std::sinh(be * t));
  const double den = std::sqrt(2.0 * a) * std::cos(al * x) - std::cosh(be * t);
  return std::polar(1.0, t) * (1.0 + num / den);
}

inline C central_diff(const std::function<C(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Naive O(n^2) DFT with 1/n normalization, for checking the FFT path.
inline std::vector<C> naive_dft(const std::vector<C>& v) {
  const std::size_t n = v.size();
  std::vector<C> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    C acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += v[j] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(k * j % n) / n);
    }
    out[k] = acc / static_cast<double>(n);
  }
  return out;
}

// Trapezoid sum of f over [0, L) with n nodes.
inline double trapezoid(const std::function<double(double)>& f, double L, int n) {
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += f(L * j / n);
  return s * L / n;
}

}  // namespace oracle

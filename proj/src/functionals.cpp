#include "akhlab/functionals.hpp"

#include <vector>

namespace akhlab {

namespace {

std::vector<double> modulus_squared(const SampledField& f) {
  std::vector<double> m(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) m[j] = std::norm(f[j]);
  return m;
}

}  // namespace

double mass(const SampledField& f) {
  std::vector<double> integrand = modulus_squared(f);
  for (double& v : integrand) v -= 1.0;
  return quadrature_real(integrand, f.grid());
}

double energy(const SampledField& f) {
  const SampledField ux = spectral_derivative(f, 1);
  std::vector<double> integrand(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double m = std::norm(f[j]) - 1.0;
    integrand[j] = std::norm(ux[j]) - 0.5 * m * m;
  }
  return quadrature_real(integrand, f.grid());
}

double f_functional(const SampledField& f) {
  const Spectrum sp = transform(f);
  const SampledField ux = inverse(spectral_derivative(sp, 1));
  const SampledField uxx = inverse(spectral_derivative(sp, 2));

  const std::vector<double> m2 = modulus_squared(f);
  std::vector<Complex> m2c(m2.begin(), m2.end());
  const SampledField m2x = spectral_derivative(SampledField(f.grid(), std::move(m2c)), 1);

  std::vector<double> integrand(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double m = m2[j] - 1.0;
    const double dm = m2x[j].real();
    integrand[j] = std::norm(uxx[j]) - 3.0 * m * std::norm(ux[j]) - 0.5 * dm * dm +
                   0.5 * m * m * m;
  }
  return quadrature_real(integrand, f.grid());
}

double h_functional(const SampledField& f, double alpha2) {
  return f_functional(f) - alpha2 * energy(f);
}

double h_functional(const SampledField& f, const AkhmedievParams& p, double multiplier) {
  return h_functional(f, multiplier * p.alpha2());
}

FunctionalReport evaluate_functionals(const SampledField& f, double alpha2, double time) {
  FunctionalReport r;
  r.mass = mass(f);
  r.energy = energy(f);
  r.f_value = f_functional(f);
  r.h_value = r.f_value - alpha2 * r.energy;
  r.alpha2 = alpha2;
  r.grid_points = f.size();
  r.field_time = time;
  return r;
}

FunctionalScales functional_scales(const SampledField& f) {
  const SampledField ux = spectral_derivative(f, 1);
  std::vector<double> m(f.size());
  std::vector<double> e(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double d = std::norm(f[j]) - 1.0;
    m[j] = std::norm(f[j]);
    e[j] = std::norm(ux[j]) + 0.5 * d * d;
  }
  return {quadrature_real(m, f.grid()), quadrature_real(e, f.grid())};
}

}  // namespace akhlab

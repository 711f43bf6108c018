#include <cmath>
#include <random>

#include "akhlab/breather.hpp"
#include "akhlab/functionals.hpp"
#include "akhlab/random.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace akhlab;

namespace {

SampledField breather_field(const AkhmedievParams& p, double t, std::size_t n) {
  return SampledField::sample(PeriodicGrid(n, p.period), [&](double x) { return akhmediev(p, t, x); });
}

bool close_rel(double x, double y, double tol) { return std::abs(x - y) <= tol * (1.0 + std::abs(y)); }

}  // namespace

TEST_CASE("functionals vanish on the Stokes wave") {
  const auto p = derive_params(0.25);
  const PeriodicGrid g(128, p.period);
  const auto s = SampledField::constant(g, p.phase_factor);
  CHECK(std::abs(mass(s)) < 1e-13);
  CHECK(std::abs(energy(s)) < 1e-13);
  CHECK(std::abs(f_functional(s)) < 1e-13);
  CHECK(std::abs(h_functional(s, p)) < 1e-13);
}

TEST_CASE("mass of the zero field") {
  const PeriodicGrid g(64, 3.5);
  CHECK(mass(SampledField::constant(g, 0.0)) == doctest::Approx(-3.5).epsilon(1e-15));
}

TEST_CASE("functionals against direct trapezoid sums") {
  // u = 1 + eps cos(alpha x) has explicit derivatives
  const auto p = derive_params(0.3);
  const double eps = 0.2, al = p.alpha, L = p.period;
  const auto f = SampledField::sample(PeriodicGrid(64, L), [&](double x) { return Complex(1.0 + eps * std::cos(al * x)); });
  auto u = [&](double x) { return 1.0 + eps * std::cos(al * x); };
  auto ux = [&](double x) { return -eps * al * std::sin(al * x); };
  auto uxx = [&](double x) { return -eps * al * al * std::cos(al * x); };
  const double m_ref = oracle::trapezoid([&](double x) { return u(x) * u(x) - 1.0; }, L, 4096);
  const double e_ref = oracle::trapezoid([&](double x) {
    const double m = u(x) * u(x) - 1.0;
    return ux(x) * ux(x) - 0.5 * m * m;
  }, L, 4096);
  const double f_ref = oracle::trapezoid([&](double x) {
    const double m = u(x) * u(x) - 1.0, mx = 2 * u(x) * ux(x);
    return uxx(x) * uxx(x) - 3 * m * ux(x) * ux(x) - 0.5 * mx * mx + 0.5 * m * m * m;
  }, L, 4096);
  CHECK(mass(f) == doctest::Approx(m_ref).epsilon(1e-12));
  CHECK(energy(f) == doctest::Approx(e_ref).epsilon(1e-12));
  CHECK(f_functional(f) == doctest::Approx(f_ref).epsilon(1e-12));
}

TEST_CASE("small amplitude energy expansion") {
  const auto p = derive_params(0.25);
  const double eps = 1e-3, L = p.period;
  const auto f = SampledField::sample(PeriodicGrid(64, L), [&](double x) { return Complex(1.0 + eps * std::cos(p.alpha * x)); });
  // |u_x|^2 contributes eps^2 alpha^2 L / 2, the potential term -eps^2 L
  const double leading = eps * eps * (p.alpha2() * L / 2.0 - L);
  CHECK(std::abs(energy(f) - leading) < 0.01 * std::abs(leading));
}

TEST_CASE("conservation along the closed form") {
  for (double a : {0.1, 0.25, 0.4}) {
    const auto p = derive_params(a);
    const auto r0 = evaluate_functionals(breather_field(p, 0.0, 512), p.alpha2(), 0.0);
    for (double t : {-4.0, -1.0, 2.0, 5.0}) {
      const auto r = evaluate_functionals(breather_field(p, t, 512), p.alpha2(), t);
      CHECK(close_rel(r.mass, r0.mass, 1e-8));
      CHECK(close_rel(r.energy, r0.energy, 1e-8));
      CHECK(close_rel(r.f_value, r0.f_value, 1e-8));
      CHECK(close_rel(r.h_value, r0.h_value, 1e-8));
    }
  }
}

TEST_CASE("mass and energy pairwise agreement") {
  const auto p25 = derive_params(0.25);
  CHECK(close_rel(mass(breather_field(p25, 0.0, 512)), mass(breather_field(p25, 3.0, 512)), 1e-10));
  const auto p = derive_params(0.3);
  std::vector<double> e, f;
  for (double t : {-2.0, 0.0, 1.0, 4.0}) {
    e.push_back(energy(breather_field(p, t, 512)));
    f.push_back(f_functional(breather_field(p, t, 512)));
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      CHECK(close_rel(e[i], e[j], 1e-9));
      CHECK(close_rel(f[i], f[j], 1e-8));
    }
  }
  const auto p2 = derive_params(0.2);
  CHECK(close_rel(h_functional(breather_field(p2, 0.0, 512), p2), h_functional(breather_field(p2, 2.0, 512), p2), 1e-8));
}

TEST_CASE("grid refinement leaves F unchanged") {
  const auto p = derive_params(0.25);
  const double f256 = f_functional(breather_field(p, 0.0, 256));
  const double f512 = f_functional(breather_field(p, 0.0, 512));
  CHECK(close_rel(f256, f512, 1e-10));
}

TEST_CASE("H reduces to F with zero multiplier and is linear in it") {
  const auto p = derive_params(0.3);
  const auto u = breather_field(p, 0.7, 256);
  CHECK(h_functional(u, 0.0) == f_functional(u));
  const auto rep = evaluate_functionals(u, p.alpha2(), 0.7);
  CHECK(rep.h_value == rep.f_value - p.alpha2() * rep.energy);
  CHECK(h_functional(u, p, 2.0) == doctest::Approx(rep.f_value - 2 * p.alpha2() * rep.energy));
  CHECK(rep.grid_points == 256);
  CHECK(rep.field_time == 0.7);
}

TEST_CASE("gauge and translation invariance") {
  Rng rng(17);
  const auto p = derive_params(0.35);
  const PeriodicGrid g(128, p.period);
  for (int k = 0; k < 10; ++k) {
    const auto u = SampledField::sample(g, [&](double x) { return akhmediev(p, 0.3, x); }) +
                   random_band_limited(g, 10, 0.1, rng);
    const Complex phase = std::polar(1.0, rng.uniform(0.0, 2 * M_PI));
    const auto v = u * phase;
    const auto w = u.rotated(static_cast<std::ptrdiff_t>(rng.uniform(0.0, 128.0)));
    for (auto* G : {&mass, &energy, &f_functional}) {
      const double g0 = (*G)(u);
      CHECK(close_rel((*G)(v), g0, 1e-12));
      CHECK(close_rel((*G)(w), g0, 1e-12));
    }
  }
}

TEST_CASE("functional scales are positive on the breather") {
  const auto p = derive_params(0.25);
  const auto s = functional_scales(breather_field(p, 0.0, 256));
  CHECK(s.mass > p.period);
  CHECK(s.energy > 0.0);
}

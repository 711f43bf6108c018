#include "akhlab/variational.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

#include "akhlab/functionals.hpp"

namespace akhlab {

namespace {

constexpr Complex I{0.0, 1.0};

struct OperatorTerms {
  std::vector<Complex> value;
  std::vector<double> scale;
};

OperatorTerms apply_operator(const SampledField& u, double alpha2, bool& under_resolved,
                             int& retained) {
  Spectrum sp = transform(u);
  under_resolved = tail_ratio(sp) > kUnderResolvedTail;
  retained = truncate_noise_tail(sp, kDerivativeNoiseFloor);
  const SampledField ux = inverse(spectral_derivative(sp, 1));
  const SampledField uxx = inverse(spectral_derivative(sp, 2));
  const SampledField u4x = inverse(spectral_derivative(sp, 4));

  OperatorTerms out{std::vector<Complex>(u.size()), std::vector<double>(u.size())};
  for (std::size_t j = 0; j < u.size(); ++j) {
    const Complex a = u[j];
    const Complex ax = ux[j];
    const Complex axx = uxx[j];
    const double m = std::norm(a);
    const std::array<Complex, 8> terms{
        u4x[j],
        3.0 * ax * ax * std::conj(a),
        (4.0 * m - 3.0) * axx,
        a * a * std::conj(axx),
        2.0 * std::norm(ax) * a,
        1.5 * (m - 1.0) * (m - 1.0) * a,
        alpha2 * axx,
        alpha2 * (m - 1.0) * a,
    };
    Complex sum = 0.0;
    double scale = 0.0;
    for (const auto& t : terms) {
      sum += t;
      scale += std::abs(t);
    }
    out.value[j] = sum;
    out.scale[j] = scale;
  }
  return out;
}

void require_breather_period(const AkhmedievParams& p, const PeriodicGrid& grid) {
  if (std::abs(grid.length() - p.period) > 1e-12 * p.period) {
    throw std::invalid_argument("grid length must equal the breather period 2 pi / alpha");
  }
}

}  // namespace

OdeResidual ode_operator(const SampledField& u, double alpha2) {
  bool under = false;
  int retained = 0;
  OperatorTerms t = apply_operator(u, alpha2, under, retained);
  return {SampledField(u.grid(), std::move(t.value)), under, retained};
}

OdeResidual ode_lhs(const AkhmedievParams& p, double t, const PeriodicGrid& grid) {
  require_breather_period(p, grid);
  const auto a = SampledField::sample(grid, [&](double x) { return akhmediev(p, t, x); });
  return ode_operator(a, p.alpha2());
}

ResidualReport residual_report(const AkhmedievParams& p, double t, std::size_t n_points) {
  const PeriodicGrid grid(n_points, p.period);
  const OdeResidual r = ode_lhs(p, t, grid);
  ResidualReport rep;
  rep.params = p;
  rep.time = t;
  rep.sup_norm = r.field.max_abs();
  rep.l2_norm = l2_norm(r.field);
  rep.grid_points = n_points;
  rep.under_resolved = r.under_resolved;
  return rep;
}

namespace {

using LComplex = std::complex<long double>;

// Forward DFT in long double, normalized by 1/n.
std::vector<LComplex> extended_transform(std::vector<LComplex> data) {
  static std::mutex planning;
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftwl_complex*>(data.data());
  fftwl_plan plan;
  {
    std::lock_guard<std::mutex> lock(planning);
    plan = fftwl_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
  fftwl_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planning);
    fftwl_destroy_plan(plan);
  }
  for (auto& c : data) c /= static_cast<long double>(n);
  return data;
}

}  // namespace

PointResidual ode_at_point(const AkhmedievParams& p, double t, double x, std::size_t n_points) {
  const PeriodicGrid grid(n_points, p.period);
  const int n = static_cast<int>(grid.size());
  const int half = n / 2;
  const long double a = p.a;
  const long double al2 = 2.0L * (1.0L - 2.0L * a);
  const long double al = std::sqrt(al2);
  const long double be = std::sqrt(8.0L * a * (1.0L - 2.0L * a));
  const long double s2a = std::sqrt(2.0L * a);
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double L = 2.0L * pi / al;
  const long double tl = t;
  const LComplex phase(std::cos(tl), std::sin(tl));
  const LComplex num(al2 * std::cosh(be * tl), be * std::sinh(be * tl));

  std::vector<LComplex> u(grid.size());
  for (int j = 0; j < n; ++j) {
    const long double y = static_cast<long double>(x) + L * j / n;
    u[j] = phase * (1.0L + num / (s2a * std::cos(al * y) - std::cosh(be * tl)));
  }
  std::vector<LComplex> c = extended_transform(u);

  const auto magnitude = [&](int m) {
    const long double pos = m < half ? std::abs(c[m]) : 0.0L;
    return std::max(pos, std::abs(c[(n - m) % n]));
  };
  int start = 0;
  long double peak = 0.0L;
  for (int m = 0; m <= half; ++m) {
    if (magnitude(m) > peak) {
      peak = magnitude(m);
      start = m;
    }
  }
  // Extended precision carries about three more digits, so the floor drops too.
  const long double floor = 1e-3L * kDerivativeNoiseFloor * peak;
  int cutoff = half + 1;
  for (int m = start + 1; m <= half; ++m) {
    if (magnitude(m) < floor) {
      cutoff = m;
      break;
    }
  }

  // Derivatives at the first node, x itself: sum of c_n (i k_n)^order.
  LComplex d1 = 0.0L, d2 = 0.0L, d4 = 0.0L;
  for (int j = 0; j < n; ++j) {
    const int freq = j < half ? j : j - n;
    if (std::abs(freq) >= cutoff) continue;
    const long double k = 2.0L * pi * freq / L;
    if (freq != -half) d1 += c[j] * LComplex(0.0L, k);
    d2 -= c[j] * k * k;
    d4 += c[j] * k * k * k * k;
  }
  const LComplex v = u[0];
  const long double m = std::norm(v);
  const LComplex terms[] = {
      d4,
      3.0L * d1 * d1 * std::conj(v),
      (4.0L * m - 3.0L) * d2,
      v * v * std::conj(d2),
      2.0L * std::norm(d1) * v,
      1.5L * (m - 1.0L) * (m - 1.0L) * v,
      al2 * d2,
      al2 * (m - 1.0L) * v,
  };
  LComplex sum = 0.0L;
  long double scale = 0.0L;
  for (const auto& term : terms) {
    sum += term;
    scale += std::abs(term);
  }
  return {Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag())),
          static_cast<double>(scale)};
}

Complex evaluate_R(const AkhmedievParams& p, int i, double t, double x) {
  const AppendixFactors f = appendix_factors(p, t, x);
  const Complex M = f.M;
  const Complex Mb = std::conj(f.M);
  const Complex Mt = f.M_t;
  const double N = f.N;
  const double Nt = f.N_t;
  const double Nx = f.N_x;
  const double Nxx = f.N_xx;
  // M is a function of t alone and N is separable.
  const Complex Mx = 0.0;
  const Complex Mxb = 0.0;
  const Complex Mxx = 0.0;
  const Complex Mxt = 0.0;
  const Complex Mxxt = 0.0;
  const double Nxt = 0.0;
  const double Nxxt = 0.0;
  const double al2 = p.alpha2();

  switch (i) {
    case 1:
      return 0.5 * N *
             (6.0 * I * M * Nt * Nx * Nx -
              2.0 * I * N * (Nx * (Mt * Nx + M * (I * Nx + 2.0 * Nxt)) + Nt * (2.0 * Mx * Nx + M * Nxx)) +
              N * N * N * (Mxx - I * Mxxt) +
              N * N * (-2.0 * Mx * (Nx - I * Nxt) +
                       I * (2.0 * Nx * Mxt + Nt * Mxx + I * M * Nxx + Mt * Nxx + M * Nxxt)));
    case 2:
      return 0.5 * (2.0 * M * (Mb + N) + N * (2.0 * Mb + (al2 - 1.0) * N)) *
             (2.0 * M * Nx * Nx + N * N * Mxx - N * (2.0 * Mx * Nx + M * Nxx));
    case 3:
      return (M + N) * (-N * Mx + M * Nx) * (N * Mxb - Mb * Nx);
    case 4: {
      const Complex d = N * Mx - M * Nx;
      return 0.5 * (Mb + N) * d * d;
    }
    case 5:
      return 0.5 * N * N * (M + N) *
             ((1.5 - al2) * N * N + (-3.0 + al2) * (Mb + N) * (M + N));
    case 6: {
      const Complex mp = M + N;
      const Complex mm = Mb + N;
      return 0.75 * mp * mp * mp * mm * mm;
    }
    default:
      throw std::out_of_range("R index must be in 1..6");
  }
}

Complex appendix_sum(const AkhmedievParams& p, double t, double x) {
  Complex sum = 0.0;
  for (int i = 1; i <= 6; ++i) sum += evaluate_R(p, i, t, x);
  const double N = appendix_factors(p, t, x).N;
  return std::polar(1.0, t) * sum / std::pow(N, 5);
}

std::vector<double> geometric_eps(double first, double ratio, int count) {
  std::vector<double> eps;
  double e = first;
  for (int k = 0; k < count; ++k) {
    eps.push_back(e);
    e *= ratio;
  }
  return eps;
}

StationarityResult h_stationarity(const AkhmedievParams& p, double t, const SampledField& w,
                                  const std::vector<double>& eps_list, double multiplier) {
  if (eps_list.size() < 2) throw std::invalid_argument("need at least two eps values");
  require_breather_period(p, w.grid());
  const double alpha2 = multiplier * p.alpha2();
  const auto a = SampledField::sample(w.grid(), [&](double x) { return akhmediev(p, t, x); });

  StationarityResult r;
  r.h_reference = h_functional(a, alpha2);
  const double floor = 1e-12 * std::max(1.0, std::abs(r.h_reference));

  std::vector<double> lx;
  std::vector<double> ly;
  for (double eps : eps_list) {
    const double d = std::abs(h_functional(a + w * Complex(eps, 0.0), alpha2) - r.h_reference);
    r.eps.push_back(eps);
    r.delta.push_back(d);
    if (d > floor) {
      lx.push_back(std::log(eps));
      ly.push_back(std::log(d));
    }
  }
  if (lx.size() < 2) {
    r.vanishes_to_roundoff = true;
    r.slope = std::nan("");
    return r;
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return r;
}

}  // namespace akhlab

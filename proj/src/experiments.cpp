#include "akhlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace akhlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kCoarseShifts = 64;
constexpr int kCoarsePhases = 64;
constexpr double kFinestStep = 1e-6;

// Everything the modulation search needs in Fourier space. With
// c_n = w_n u(n) conj(v(n)) and z(x0) = sum_n c_n e^{i k_n x0},
//   || u - e^{i g} v(. - x0) ||^2 = U + V - 2 Re(e^{-i g} z(x0)),
// so the optimal phase is arg z and the objective reduces to U + V - 2|z|.
class ModulationObjective {
 public:
  ModulationObjective(const SampledField& u, const SampledField& v, const SobolevConvention& conv)
      : grid_(u.grid()), u_(transform(u)), v_(transform(v)) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("grid mismatch");
    const std::size_t n = grid_.size();
    weights_.resize(n);
    k_.resize(n);
    c_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const int freq = grid_.frequency(j);
      weights_[j] = conv.weight(freq);
      k_[j] = grid_.wavenumber(freq);
      c_[j] = weights_[j] * u_.coeffs()[j] * std::conj(v_.coeffs()[j]);
      norms_ += weights_[j] * (std::norm(u_.coeffs()[j]) + std::norm(v_.coeffs()[j]));
    }
  }

  double period() const { return grid_.length(); }
  double norms() const { return norms_; }

  Complex z(double x0) const {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < c_.size(); ++j) sum += c_[j] * std::polar(1.0, k_[j] * x0);
    return sum;
  }

  double reduced(double x0) const { return norms_ - 2.0 * std::abs(z(x0)); }

  double objective(double x0, double gamma) const {
    return norms_ - 2.0 * (std::polar(1.0, -gamma) * z(x0)).real();
  }

  // Distance evaluated term by term, without the cancellation in U + V - 2|z|.
  double direct_distance(double x0, double gamma) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      const Complex shifted = std::polar(1.0, gamma - k_[j] * x0) * v_.coeffs()[j];
      sum += weights_[j] * std::norm(u_.coeffs()[j] - shifted);
    }
    return std::sqrt(sum);
  }

  // One Newton step towards a maximum of |z|^2; nullopt-like NaN if the
  // curvature has the wrong sign.
  double newton_step(double x0) const {
    Complex z0 = 0.0, z1 = 0.0, z2 = 0.0;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      const Complex term = c_[j] * std::polar(1.0, k_[j] * x0);
      z0 += term;
      z1 += Complex(0.0, k_[j]) * term;
      z2 += -k_[j] * k_[j] * term;
    }
    const double g1 = 2.0 * (std::conj(z0) * z1).real();
    const double g2 = 2.0 * (std::norm(z1) + (std::conj(z0) * z2).real());
    if (!(g2 < 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return -g1 / g2;
  }

 private:
  PeriodicGrid grid_;
  Spectrum u_;
  Spectrum v_;
  std::vector<double> weights_;
  std::vector<double> k_;
  std::vector<Complex> c_;
  double norms_ = 0.0;
};

double wrap(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  const double den = n * sxx - sx * sx;
  if (x.size() < 2 || den == 0.0) throw std::invalid_argument("least squares needs two distinct abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

void require_scan(const AkhmedievParams& p, const std::vector<double>& T) {
  if (T.empty()) throw std::invalid_argument("T_values must not be empty");
  const bool negative = T.front() < 0.0;
  for (std::size_t k = 0; k < T.size(); ++k) {
    if ((T[k] < 0.0) != negative) throw std::invalid_argument("T_values must share one sign");
    if (k > 0 && !(std::abs(T[k]) > std::abs(T[k - 1]))) {
      throw std::invalid_argument("|T_values| must be strictly increasing");
    }
    if (std::abs(T[k]) * p.beta > 300.0) throw std::invalid_argument("|T| beta must not exceed 300");
  }
}

SampledField breather_field(const AkhmedievParams& p, double t, const PeriodicGrid& grid) {
  return SampledField::sample(grid, [&](double x) { return akhmediev(p, t, x); });
}

}  // namespace

ModulationParams wrap_modulation(double x0, double gamma0, double period) {
  return {wrap(x0, period), wrap(gamma0, kTwoPi)};
}

ModulatedDistance modulated_distance_to(const SampledField& u, const SampledField& target,
                                        const SobolevConvention& conv) {
  const ModulationObjective obj(u, target, conv);
  const double L = obj.period();

  ModulatedDistance out;
  double best_x = 0.0;
  double best_g = 0.0;
  double best_j = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kCoarseShifts; ++i) {
    const double x0 = L * i / kCoarseShifts;
    const Complex z = obj.z(x0);
    for (int m = 0; m < kCoarsePhases; ++m) {
      const double g = kTwoPi * m / kCoarsePhases;
      const double j = obj.norms() - 2.0 * (std::polar(1.0, -g) * z).real();
      if (j < best_j) {
        best_j = j;
        best_x = x0;
        best_g = g;
      }
    }
  }
  out.coarse_distance = obj.direct_distance(best_x, best_g);

  // Coordinate descent in x0, phase in closed form.
  double x = best_x;
  double fx = obj.reduced(x);
  for (double step = L / kCoarseShifts; step >= kFinestStep; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (double trial : {x - step, x + step}) {
        const double ft = obj.reduced(trial);
        if (ft < fx) {
          x = trial;
          fx = ft;
          moved = true;
        }
      }
    }
  }
  double refined_x = x;
  double refined_d = obj.direct_distance(x, std::arg(obj.z(x)));

  // Newton polish of d|z|^2/dx0 = 0; kept only if the direct distance drops.
  double xn = x;
  for (int it = 0; it < 30; ++it) {
    const double dx = obj.newton_step(xn);
    if (!std::isfinite(dx) || std::abs(dx) > 10.0 * kFinestStep) break;
    xn += dx;
    if (std::abs(dx) < 1e-15 * L) break;
  }
  const double newton_d = obj.direct_distance(xn, std::arg(obj.z(xn)));
  if (newton_d < refined_d) {
    refined_x = xn;
    refined_d = newton_d;
  }

  if (refined_d <= out.coarse_distance) {
    out.distance = refined_d;
    out.best = wrap_modulation(refined_x, std::arg(obj.z(refined_x)), L);
  } else {
    out.distance = out.coarse_distance;
    out.best = wrap_modulation(best_x, best_g, L);
  }
  return out;
}

ModulatedDistance modulated_distance(const SampledField& u, const AkhmedievParams& p, double t,
                                     const SobolevConvention& conv) {
  const PeriodicGrid& grid = u.grid();
  if (std::abs(grid.length() - p.period) > 1e-12 * p.period) {
    throw std::invalid_argument("field grid must span one breather period");
  }
  return modulated_distance_to(u, breather_field(p, t, grid), conv);
}

Complex attractor_deviation(const AkhmedievParams& p, double t, double x) {
  if (t >= 0.0) return q_value(p, t, x);
  return std::conj(q_value(p, -t, x));
}

QDecayScan q_decay_scan(const AkhmedievParams& p, double s, const std::vector<double>& T_values,
                        std::size_t n_points) {
  require_scan(p, T_values);
  if (T_values.size() < 3) throw std::invalid_argument("q_decay_scan needs at least three T values");
  const PeriodicGrid grid(n_points, p.period);
  QDecayScan scan;
  scan.params = p;
  scan.s = s;
  for (double T : T_values) {
    const Spectrum q = transform(
        SampledField::sample(grid, [&](double x) { return attractor_deviation(p, T, x); }));
    QDecayRow row;
    row.T = T;
    row.l2 = sobolev_norm(q, {SobolevKind::homogeneous, 0.0});
    row.h1 = sobolev_norm(q, {SobolevKind::homogeneous, 1.0});
    row.hs = sobolev_norm(q, {SobolevKind::homogeneous, s});
    row.hs_inhomogeneous = sobolev_norm(q, {SobolevKind::inhomogeneous, s});
    scan.rows.push_back(row);
  }
  std::vector<double> x, y;
  for (std::size_t k = scan.rows.size() - 3; k < scan.rows.size(); ++k) {
    x.push_back(std::abs(scan.rows[k].T));
    y.push_back(std::log(scan.rows[k].h1));
  }
  scan.fitted_rate = -least_squares(x, y).slope;
  return scan;
}

InstabilityReport instability_report(const AkhmedievParams& p, double s,
                                     const std::vector<double>& T_values, SobolevKind kind,
                                     std::size_t n_points) {
  require_scan(p, T_values);
  const PeriodicGrid grid(n_points, p.period);
  const SobolevConvention conv{kind, s};
  const SobolevKind other_kind = kind == SobolevKind::inhomogeneous
                                     ? SobolevKind::homogeneous
                                     : SobolevKind::inhomogeneous;
  InstabilityReport rep;
  rep.s = s;
  rep.a = p.a;
  rep.kind = kind;
  for (double T : T_values) {
    // Stokes data at time T differs from A(T) by e^{iT} Q(T); its solution
    // is the Stokes wave, which at t = 0 is the bare limiting phase.
    const Complex phase = T >= 0.0 ? p.phase_factor : std::conj(p.phase_factor);
    const SampledField q =
        SampledField::sample(grid, [&](double x) { return attractor_deviation(p, T, x); });
    const SampledField stokes_at_zero = SampledField::constant(grid, stokes(0.0, phase));
    InstabilityRow row;
    row.T = T;
    row.eps = sobolev_norm(q, conv);
    row.d0 = modulated_distance(stokes_at_zero, p, 0.0, conv).distance;
    row.ratio = row.d0 / row.eps;
    rep.rows.push_back(row);
  }
  rep.c_s_estimate = rep.rows.front().d0;
  rep.c_s_other_convention =
      modulated_distance(SampledField::constant(grid, p.phase_factor), p, 0.0, {other_kind, s})
          .distance;
  if (rep.rows.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : rep.rows) {
      x.push_back(std::abs(r.T));
      y.push_back(std::log(r.eps));
    }
    rep.fitted_decay_rate = -least_squares(x, y).slope;
  }
  return rep;
}

double bogoliubov_rate(double k) {
  const double d = 2.0 - k * k;
  return d > 0.0 ? std::abs(k) * std::sqrt(d) : 0.0;
}

MiGrowth mi_growth_rate(const AkhmedievParams& p, double delta, const SolverConfig& cfg, int mode) {
  if (!(delta > 0.0 && delta <= 1e-3)) throw std::invalid_argument("delta must be in (0, 1e-3]");
  if (mode < 1) throw std::invalid_argument("sideband mode must be positive");
  if (!(cfg.t_end > cfg.t_start)) throw std::invalid_argument("mi_growth_rate integrates forward");
  const PeriodicGrid grid(cfg.n_points, p.period);
  if (mode >= static_cast<int>(grid.size() / 2)) throw std::invalid_argument("sideband above Nyquist");

  const double k = mode * p.alpha;
  const SampledField u0 = SampledField::sample(
      grid, [&](double x) { return p.phase_factor * (1.0 + delta * std::cos(k * x)); });
  SolverConfig run_cfg = cfg;
  run_cfg.record_diagnostics = false;
  const Trajectory traj = evolve(u0, run_cfg);

  MiGrowth out;
  out.mode = mode;
  out.wavenumber = k;
  out.oracle = bogoliubov_rate(k);
  out.blew_up = traj.blew_up;

  // Sideband coefficient in the rotating frame of the Stokes background.
  std::vector<Complex> c;
  for (std::size_t n = 0; n < traj.snapshots.size(); ++n) {
    const Spectrum sp = transform(traj.snapshots[n]);
    const double elapsed = traj.times[n] - cfg.t_start;
    const Complex frame = std::polar(1.0, -elapsed) * std::conj(p.phase_factor);
    const Complex cn = 0.5 * (sp.coeff(mode) + sp.coeff(-mode)) * frame;
    c.push_back(cn);
    out.times.push_back(traj.times[n]);
    out.amplitude.push_back(2.0 * std::abs(cn));
  }

  // Uniformly spaced samples only: drop a shortened final interval.
  const double h = cfg.signed_step() * static_cast<double>(cfg.snapshot_stride);
  std::size_t usable = c.size();
  if (usable >= 2 && std::abs((out.times[usable - 1] - out.times[usable - 2]) - h) > 1e-9 * h) {
    --usable;
  }
  std::size_t window = usable;
  for (std::size_t n = 0; n < usable; ++n) {
    if (out.amplitude[n] >= 10.0 * delta) {
      window = n;
      break;
    }
  }
  if (window < 3) throw std::runtime_error("sideband fit window has fewer than three samples");
  out.window_end = out.times[window - 1];
  out.window_short = (out.window_end - cfg.t_start) < 2.0 / p.beta;

  double num = 0.0;
  double den = 0.0;
  for (std::size_t n = 1; n + 1 < window; ++n) {
    num += (std::conj(c[n]) * (c[n + 1] + c[n - 1])).real();
    den += 2.0 * std::norm(c[n]);
  }
  const double lambda = num / den;  // cosh(sigma h) or cos(omega h)
  if (lambda >= 1.0) {
    out.sigma = std::acosh(lambda) / h;
  } else {
    out.sigma = 0.0;
    out.oscillation = std::acos(std::max(-1.0, lambda)) / h;
  }

  std::vector<double> tx, ly;
  for (std::size_t n = 0; n < window; ++n) {
    tx.push_back(out.times[n]);
    ly.push_back(std::log(out.amplitude[n]));
  }
  out.log_slope = least_squares(tx, ly).slope;
  return out;
}

DivergenceReport breather_perturbation_divergence(const AkhmedievParams& p, const SampledField& w0,
                                                  const SolverConfig& cfg, double s) {
  const SobolevConvention conv{SobolevKind::inhomogeneous, s};
  DivergenceReport rep;
  rep.w0_norm = sobolev_norm(w0, conv);
  if (rep.w0_norm > 1e-2) throw std::invalid_argument("perturbation H^s norm must be <= 1e-2");
  const SampledField u0 = breather_field(p, cfg.t_start, w0.grid()) + w0;
  SolverConfig run_cfg = cfg;
  run_cfg.record_diagnostics = false;
  const Trajectory traj = evolve(u0, run_cfg);
  rep.blew_up = traj.blew_up;
  for (std::size_t n = 0; n < traj.snapshots.size(); ++n) {
    rep.rows.push_back({traj.times[n], modulated_distance(traj.snapshots[n], p, traj.times[n], conv).distance});
  }
  return rep;
}

}  // namespace akhlab

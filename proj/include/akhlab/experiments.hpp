#pragma once

#include <vector>

#include "akhlab/breather.hpp"
#include "akhlab/nls_solver.hpp"
#include "akhlab/spectral.hpp"

namespace akhlab {

/// A point of the symmetry group: translation x0 in [0, L), phase in [0, 2 pi).
struct ModulationParams {
  double x0 = 0.0;
  double gamma0 = 0.0;
};

ModulationParams wrap_modulation(double x0, double gamma0, double period);

struct ModulatedDistance {
  double distance = 0.0;         // after refinement
  double coarse_distance = 0.0;  // best point of the 64 x 64 search
  ModulationParams best;
};

/// min over (x0, gamma) of || u - e^{i gamma} A(t, . - x0) ||_{H^s}.
/// A 64 x 64 grid search, then coordinate descent in x0 down to step 1e-6
/// with gamma solved in closed form, then a Newton polish of the stationarity
/// condition. Translations act spectrally, so x0 need not be a node. The
/// refined result is never worse than the coarse one.
ModulatedDistance modulated_distance(const SampledField& u, const AkhmedievParams& p, double t,
                                     const SobolevConvention& conv);

/// Same search against an arbitrary profile `target` on the same grid.
ModulatedDistance modulated_distance_to(const SampledField& u, const SampledField& target,
                                        const SobolevConvention& conv);

/// Deviation of A from its limiting Stokes profile: Q(T) for T >= 0, and
/// A(T) e^{-iT} - e^{-i theta} = conj(Q(-T)) for T < 0.
Complex attractor_deviation(const AkhmedievParams& p, double t, double x);

struct QDecayRow {
  double T = 0.0;
  double l2 = 0.0;  // homogeneous, s = 0
  double h1 = 0.0;  // homogeneous, s = 1
  double hs = 0.0;  // homogeneous, s
  double hs_inhomogeneous = 0.0;
};

struct QDecayScan {
  AkhmedievParams params;
  double s = 0.0;
  std::vector<QDecayRow> rows;
  double fitted_rate = 0.0;  // -slope of log h1 vs |T| over the three largest |T|
};

/// Requires |T| strictly increasing, one sign throughout, and
/// max |T| beta <= 300.
QDecayScan q_decay_scan(const AkhmedievParams& p, double s, const std::vector<double>& T_values,
                        std::size_t n_points = 256);

struct InstabilityRow {
  double T = 0.0;
  double eps = 0.0;  // ||Q(T)||_{H^s}: distance between Stokes data and A(T)
  double d0 = 0.0;   // modulated distance of the Stokes solution to A at t = 0
  double ratio = 0.0;
};

struct InstabilityReport {
  double s = 0.0;
  double a = 0.0;
  SobolevKind kind = SobolevKind::inhomogeneous;
  std::vector<InstabilityRow> rows;
  double fitted_decay_rate = 0.0;  // -slope of log eps vs |T| over all rows
  double c_s_estimate = 0.0;
  double c_s_other_convention = 0.0;
};

InstabilityReport instability_report(const AkhmedievParams& p, double s,
                                     const std::vector<double>& T_values,
                                     SobolevKind kind = SobolevKind::inhomogeneous,
                                     std::size_t n_points = 256);

/// Linearized growth rate k sqrt(2 - k^2) of a sideband k on the unit
/// background; zero when k^2 >= 2.
double bogoliubov_rate(double k);

struct MiGrowth {
  int mode = 1;
  double wavenumber = 0.0;
  double sigma = 0.0;        // fitted growth rate
  double oscillation = 0.0;  // fitted frequency when the mode is neutral
  double oracle = 0.0;       // bogoliubov_rate(wavenumber)
  double log_slope = 0.0;    // plain log-linear slope, diagnostic only
  double window_end = 0.0;
  bool window_short = false;  // fit window shorter than 2 / beta
  bool blew_up = false;
  std::vector<double> times;
  std::vector<double> amplitude;  // sideband pair amplitude, whole run
};

/// Seeds u0 = e^{i theta}(1 + delta cos(mode alpha x)) on the breather period
/// and follows the mode's coefficient c(t) in the frame of the Stokes wave.
/// While the amplitude stays below 10 delta the linearized dynamics give
/// c(t + h) + c(t - h) = 2 cosh(sigma h) c(t); sigma comes from the least
/// squares fit of that recurrence. cfg.t_start is the seeding time.
MiGrowth mi_growth_rate(const AkhmedievParams& p, double delta, const SolverConfig& cfg,
                        int mode = 1);

struct DivergenceRow {
  double t = 0.0;
  double distance = 0.0;
};

struct DivergenceReport {
  std::vector<DivergenceRow> rows;
  double w0_norm = 0.0;
  bool blew_up = false;
};

/// Evolves A(cfg.t_start) + w0 and records the modulated H^s distance
/// (inhomogeneous) to the breather orbit at every snapshot.
/// Requires ||w0||_{H^s} <= 1e-2.
DivergenceReport breather_perturbation_divergence(const AkhmedievParams& p, const SampledField& w0,
                                                  const SolverConfig& cfg, double s);

}  // namespace akhlab

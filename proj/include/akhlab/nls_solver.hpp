#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "akhlab/breather.hpp"
#include "akhlab/functionals.hpp"
#include "akhlab/spectral.hpp"

namespace akhlab {

enum class SplittingScheme { strang, lie };

const char* to_string(SplittingScheme scheme);
SplittingScheme parse_scheme(const std::string& name);

struct SolverConfig {
  double dt = 5e-4;
  std::size_t n_points = 256;
  double t_start = 0.0;
  double t_end = 1.0;
  SplittingScheme scheme = SplittingScheme::strang;
  std::size_t snapshot_stride = 100;
  double amplitude_guard = 1e6;
  bool record_diagnostics = true;
  double diagnostic_alpha2 = 0.0;  // alpha^2 used for the h_value column

  /// Throws std::invalid_argument on dt <= 0 or dt > 0.01, a zero time span,
  /// a zero stride, a non-positive guard, or a bad grid size.
  void validate() const;

  /// Steps actually taken; the step is shrunk so the last lands on t_end.
  std::size_t step_count() const;
  double signed_step() const;
};

struct Trajectory {
  SolverConfig config;
  std::vector<double> times;
  std::vector<SampledField> snapshots;
  std::vector<FunctionalReport> diagnostics;  // empty unless recorded
  bool blew_up = false;
  std::size_t steps_taken = 0;

  const SampledField& final_state() const { return snapshots.back(); }
};

/// Split-step Fourier integration of i u_t + u_xx + |u|^2 u = 0. Strang
/// composes half nonlinear phase, exact linear Fourier step, half nonlinear
/// phase; Lie does one full step of each. Snapshots are taken at t_start,
/// every `snapshot_stride` steps, and at the end. On non-finite values or
/// max |u| > amplitude_guard the run stops with `blew_up` set and the
/// trajectory holds everything recorded up to the last healthy step.
Trajectory evolve(const SampledField& u0, const SolverConfig& cfg);

/// Componentwise maximum of functional_scales over the snapshots. Drifts are
/// divided by this so the start time does not set the yardstick.
FunctionalScales trajectory_scales(const Trajectory& traj);

/// Integrates the perturbation w = u - A of the breather:
///   i w_t + w_xx = -(|A + w|^2 (A + w) - |A|^2 A).
/// The nonlinear substep freezes A at its midpoint time and advances with
/// one explicit midpoint step.
Trajectory evolve_perturbation(const SampledField& w0, const AkhmedievParams& p,
                               const SolverConfig& cfg);

/// Writes metadata.json, snapshots/snapshot_NNNNN.csv (x, re, im) and
/// diagnostics.csv (t, M, E, F) under `dir`. Returns the written paths,
/// relative to `dir`.
std::vector<std::filesystem::path> write_trajectory(const Trajectory& traj,
                                                    const std::filesystem::path& dir);

}  // namespace akhlab

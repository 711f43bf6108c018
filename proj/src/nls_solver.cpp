#include "akhlab/nls_solver.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "akhlab/csv.hpp"

namespace akhlab {

namespace {

bool healthy(const std::vector<Complex>& u, double guard) {
  for (const auto& z : u) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (std::abs(z) > guard) return false;
  }
  return true;
}

// Shared driver. `nonlinear(u, t, tau)` advances the pointwise part from
// time t by tau; the linear part is the exact Fourier flow.
Trajectory run(const SampledField& u0, const SolverConfig& cfg,
               const std::function<void(std::vector<Complex>&, double, double)>& nonlinear) {
  cfg.validate();
  if (u0.size() != cfg.n_points) {
    throw std::invalid_argument("initial field size does not match SolverConfig::n_points");
  }
  const PeriodicGrid& grid = u0.grid();
  const std::size_t steps = cfg.step_count();
  const double h = cfg.signed_step();

  std::vector<Complex> propagator(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = grid.wavenumber(grid.frequency(j));
    propagator[j] = std::polar(1.0, -k * k * h);
  }
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  const auto linear = [&](std::vector<Complex>& u) {
    fft_in_place(u, true);
    for (std::size_t j = 0; j < propagator.size(); ++j) u[j] *= propagator[j] * inv_n;
    fft_in_place(u, false);
  };

  Trajectory traj;
  traj.config = cfg;
  const auto record = [&](const std::vector<Complex>& u, double t) {
    SampledField f(grid, u);
    if (cfg.record_diagnostics) {
      traj.diagnostics.push_back(evaluate_functionals(f, cfg.diagnostic_alpha2, t));
    }
    traj.times.push_back(t);
    traj.snapshots.push_back(std::move(f));
  };

  std::vector<Complex> u(u0.values().begin(), u0.values().end());
  record(u, cfg.t_start);
  for (std::size_t step = 1; step <= steps; ++step) {
    const double t = cfg.t_start + static_cast<double>(step - 1) * h;
    if (cfg.scheme == SplittingScheme::strang) {
      nonlinear(u, t, 0.5 * h);
      linear(u);
      nonlinear(u, t + 0.5 * h, 0.5 * h);
    } else {
      nonlinear(u, t, h);
      linear(u);
    }
    if (!healthy(u, cfg.amplitude_guard)) {
      traj.blew_up = true;
      break;
    }
    traj.steps_taken = step;
    const double t_now = step == steps ? cfg.t_end : cfg.t_start + static_cast<double>(step) * h;
    if (step % cfg.snapshot_stride == 0 || step == steps) record(u, t_now);
  }
  return traj;
}

}  // namespace

const char* to_string(SplittingScheme scheme) {
  return scheme == SplittingScheme::strang ? "strang" : "lie";
}

SplittingScheme parse_scheme(const std::string& name) {
  if (name == "strang") return SplittingScheme::strang;
  if (name == "lie") return SplittingScheme::lie;
  throw std::invalid_argument("unknown splitting scheme '" + name + "'");
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || dt > 0.01) throw std::invalid_argument("dt must be in (0, 0.01]");
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || t_end == t_start) {
    throw std::invalid_argument("t_end must differ from t_start");
  }
  if (snapshot_stride == 0) throw std::invalid_argument("snapshot_stride must be positive");
  if (!(amplitude_guard > 0.0)) throw std::invalid_argument("amplitude_guard must be positive");
  PeriodicGrid(n_points, 1.0);  // validates the size
}

std::size_t SolverConfig::step_count() const {
  const double span = std::abs(t_end - t_start);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(span / dt - 1e-9)));
}

double SolverConfig::signed_step() const {
  return (t_end - t_start) / static_cast<double>(step_count());
}

Trajectory evolve(const SampledField& u0, const SolverConfig& cfg) {
  return run(u0, cfg, [](std::vector<Complex>& u, double, double tau) {
    for (auto& z : u) z *= std::polar(1.0, std::norm(z) * tau);
  });
}

Trajectory evolve_perturbation(const SampledField& w0, const AkhmedievParams& p,
                               const SolverConfig& cfg) {
  const PeriodicGrid& grid = w0.grid();
  if (std::abs(grid.length() - p.period) > 1e-12 * p.period) {
    throw std::invalid_argument("perturbation grid length must equal the breather period");
  }
  const std::vector<double> x = grid.nodes();
  std::vector<Complex> a(grid.size());
  std::vector<Complex> k1(grid.size());
  std::vector<Complex> mid(grid.size());

  // i G[w] with G[w] = |A+w|^2 (A+w) - |A|^2 A, A frozen.
  const auto rhs = [&](const std::vector<Complex>& w, std::vector<Complex>& out) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      const Complex u = a[j] + w[j];
      out[j] = Complex(0.0, 1.0) * (std::norm(u) * u - std::norm(a[j]) * a[j]);
    }
  };

  return run(w0, cfg, [&](std::vector<Complex>& w, double t, double tau) {
    const double t_mid = t + 0.5 * tau;
    for (std::size_t j = 0; j < x.size(); ++j) a[j] = akhmediev(p, t_mid, x[j]);
    rhs(w, k1);
    for (std::size_t j = 0; j < w.size(); ++j) mid[j] = w[j] + 0.5 * tau * k1[j];
    rhs(mid, k1);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += tau * k1[j];
  });
}

std::vector<std::filesystem::path> write_trajectory(const Trajectory& traj,
                                                    const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "snapshots");
  std::vector<fs::path> written;

  const auto& cfg = traj.config;
  const PeriodicGrid& grid = traj.snapshots.front().grid();
  nlohmann::json meta = {
      {"config",
       {{"dt", cfg.dt},
        {"effective_dt", cfg.signed_step()},
        {"n_points", cfg.n_points},
        {"t_start", cfg.t_start},
        {"t_end", cfg.t_end},
        {"scheme", to_string(cfg.scheme)},
        {"snapshot_stride", cfg.snapshot_stride},
        {"amplitude_guard", cfg.amplitude_guard}}},
      {"grid", {{"n_points", grid.size()}, {"length", grid.length()}}},
      {"scheme", to_string(cfg.scheme)},
      {"blew_up", traj.blew_up},
      {"steps_taken", traj.steps_taken},
      {"snapshot_times", traj.times},
  };
  {
    std::ofstream out(dir / "metadata.json", std::ios::binary);
    out << meta.dump(2) << '\n';
  }
  written.emplace_back("metadata.json");

  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%05zu.csv", k);
    const fs::path rel = fs::path("snapshots") / name;
    CsvWriter csv(dir / rel, {"x", "re", "im"});
    const auto& f = traj.snapshots[k];
    for (std::size_t j = 0; j < f.size(); ++j) {
      csv.row({grid.node(j), f[j].real(), f[j].imag()});
    }
    written.push_back(rel);
  }

  if (!traj.diagnostics.empty()) {
    CsvWriter csv(dir / "diagnostics.csv", {"t", "M", "E", "F"});
    for (const auto& d : traj.diagnostics) csv.row({d.field_time, d.mass, d.energy, d.f_value});
    written.emplace_back("diagnostics.csv");
  }
  return written;
}

FunctionalScales trajectory_scales(const Trajectory& traj) {
  FunctionalScales out;
  for (const auto& snap : traj.snapshots) {
    const auto s = functional_scales(snap);
    out.mass = std::max(out.mass, s.mass);
    out.energy = std::max(out.energy, s.energy);
  }
  return out;
}

}  // namespace akhlab

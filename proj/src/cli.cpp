#include "akhlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "akhlab/appendix.hpp"
#include "akhlab/breather.hpp"
#include "akhlab/csv.hpp"
#include "akhlab/experiments.hpp"
#include "akhlab/functionals.hpp"
#include "akhlab/nls_solver.hpp"
#include "akhlab/random.hpp"
#include "akhlab/report.hpp"
#include "akhlab/variational.hpp"

namespace akhlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(Subcommand s) {
  switch (s) {
    case Subcommand::eval: return "eval";
    case Subcommand::residual: return "residual";
    case Subcommand::verify_appendix: return "verify-appendix";
    case Subcommand::conserved: return "conserved";
    case Subcommand::evolve: return "evolve";
    case Subcommand::experiment: return "experiment";
  }
  return "?";
}

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::instability: return "instability";
    case ExperimentKind::q_decay: return "q-decay";
    case ExperimentKind::mi: return "mi";
    case ExperimentKind::divergence: return "divergence";
  }
  return "?";
}

Subcommand parse_subcommand(const std::string& name) {
  for (auto s : {Subcommand::eval, Subcommand::residual, Subcommand::verify_appendix,
                 Subcommand::conserved, Subcommand::evolve, Subcommand::experiment}) {
    if (name == to_string(s)) return s;
  }
  throw UsageError("unknown subcommand '" + name + "'");
}

ExperimentKind parse_experiment(const std::string& name) {
  for (auto k : {ExperimentKind::instability, ExperimentKind::q_decay, ExperimentKind::mi,
                 ExperimentKind::divergence}) {
    if (name == to_string(k)) return k;
  }
  throw UsageError("unknown experiment '" + name + "'");
}

RunConfig RunConfig::resolved() const {
  RunConfig r = *this;
  const bool wide = subcommand == Subcommand::residual || subcommand == Subcommand::conserved;
  if (!r.n_points) r.n_points = wide ? 512 : 256;
  if (!r.times) {
    switch (subcommand) {
      case Subcommand::residual: r.times = {-3.0, -1.0, 0.0, 0.7, 2.5}; break;
      case Subcommand::conserved: r.times = {-4.0, -1.0, 0.0, 2.0, 5.0}; break;
      default: r.times = {0.0}; break;
    }
  }
  if (!r.t_span) {
    if (subcommand == Subcommand::experiment && experiment == ExperimentKind::mi) {
      const double beta2 = 8.0 * a * (1.0 - 2.0 * a);
      r.t_span = {0.0, beta2 > 0.0 ? 5.0 / std::sqrt(beta2) : 5.0};
    } else if (subcommand == Subcommand::experiment && experiment == ExperimentKind::divergence) {
      r.t_span = {0.0, 10.0};
    } else {
      r.t_span = {-4.0, 4.0};
    }
  }
  return r;
}

void RunConfig::validate() const {
  const RunConfig r = resolved();
  if (!(a > 0.0 && a < 0.5)) throw UsageError("a must lie in (0, 1/2)");
  if (!(s >= 0.0)) throw UsageError("s must be >= 0");
  const std::size_t n = *r.n_points;
  if (n < 8 || (n & (n - 1)) != 0) throw UsageError("n_points must be a power of two >= 8");
  if (!(dt > 0.0 && dt <= 0.01)) throw UsageError("dt must be in (0, 0.01]");
  if (r.t_span->size() != 2 || (*r.t_span)[0] == (*r.t_span)[1]) {
    throw UsageError("t_span must hold two distinct times");
  }
  if (scheme != "strang" && scheme != "lie") throw UsageError("scheme must be strang or lie");
  if (snapshot_stride == 0) throw UsageError("snapshot_stride must be positive");
  if (r.times->empty()) throw UsageError("times must not be empty");
  if (x.empty()) throw UsageError("x must not be empty");
  if (T_values.empty()) throw UsageError("T_values must not be empty");
  if (!(delta > 0.0 && delta <= 1e-3)) throw UsageError("delta must be in (0, 1e-3]");
  if (mode < 1) throw UsageError("mode must be positive");
  if (convention != "inhomogeneous" && convention != "homogeneous") {
    throw UsageError("convention must be inhomogeneous or homogeneous");
  }
  if (perturbation_kind != "random" && perturbation_kind != "zero" && perturbation_kind != "stokes") {
    throw UsageError("perturbation_kind must be random, zero or stokes");
  }
  if (!(perturbation >= 0.0)) throw UsageError("perturbation must be >= 0");
  if (output_dir.empty()) throw UsageError("output_dir must not be empty");
}

namespace {

template <class T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw UsageError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> get_numbers(const json& v, const std::string& key) {
  if (!v.is_array()) throw UsageError("config key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_number(e, key));
  return out;
}

std::size_t get_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw UsageError("config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

RunConfig apply_json(const json& doc, RunConfig base) {
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "subcommand") base.subcommand = parse_subcommand(get_string(v, key));
    else if (key == "experiment") base.experiment = parse_experiment(get_string(v, key));
    else if (key == "a") base.a = get_number(v, key);
    else if (key == "s") base.s = get_number(v, key);
    else if (key == "n_points") base.n_points = get_count(v, key);
    else if (key == "dt") base.dt = get_number(v, key);
    else if (key == "t_span") base.t_span = get_numbers(v, key);
    else if (key == "scheme") base.scheme = get_string(v, key);
    else if (key == "snapshot_stride") base.snapshot_stride = get_count(v, key);
    else if (key == "times") base.times = get_numbers(v, key);
    else if (key == "x") base.x = get_numbers(v, key);
    else if (key == "T_values") base.T_values = get_numbers(v, key);
    else if (key == "delta") base.delta = get_number(v, key);
    else if (key == "mode") base.mode = static_cast<int>(get_count(v, key));
    else if (key == "convention") base.convention = get_string(v, key);
    else if (key == "perturbation_kind") base.perturbation_kind = get_string(v, key);
    else if (key == "perturbation") base.perturbation = get_number(v, key);
    else if (key == "output_dir") base.output_dir = get_string(v, key);
    else if (key == "emit_plots") base.emit_plots = get_as<bool>(v, key);
    else if (key == "seed") base.seed = get_as<std::uint64_t>(v, key);
    else throw UsageError("unknown config key '" + key + "'");
  }
  return base;
}

json to_json(const RunConfig& c) {
  const RunConfig r = c.resolved();
  return {
      {"subcommand", to_string(r.subcommand)},
      {"experiment", to_string(r.experiment)},
      {"a", r.a},
      {"s", r.s},
      {"n_points", *r.n_points},
      {"dt", r.dt},
      {"t_span", *r.t_span},
      {"scheme", r.scheme},
      {"snapshot_stride", r.snapshot_stride},
      {"times", *r.times},
      {"x", r.x},
      {"T_values", r.T_values},
      {"delta", r.delta},
      {"mode", r.mode},
      {"convention", r.convention},
      {"perturbation_kind", r.perturbation_kind},
      {"perturbation", r.perturbation},
      {"output_dir", r.output_dir},
      {"emit_plots", r.emit_plots},
      {"seed", r.seed},
  };
}

namespace {

// Single collector for every artifact of a run, so the manifest stays
// consistent with what is on disk.
class Collector {
 public:
  explicit Collector(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  fs::path path(const std::string& rel) const { return dir_ / rel; }
  void add(const fs::path& rel) { files_.push_back(rel.generic_string()); }
  void verdict(const std::string& name, bool pass) { verdicts_[name] = pass; }

  void summary(const json& doc) {
    write_json(path("summary.json"), doc);
    add("summary.json");
  }

  RunResult finish(const RunConfig& cfg) {
    RunResult result;
    result.verdicts = verdicts_;
    json failures = json::array();
    for (const auto& [name, pass] : verdicts_) {
      if (!pass) failures.push_back(name);
    }
    if (!failures.empty()) {
      write_json(path("failures.json"), {{"failed", failures}, {"verdicts", verdicts_}});
      add("failures.json");
    }
    json files = json::array();
    for (const auto& f : files_) files.push_back({{"path", f}, {"sha256", sha256_file(dir_ / f)}});
    std::string command = std::string("akhlab ") + to_string(cfg.subcommand);
    if (cfg.subcommand == Subcommand::experiment) command += std::string(" ") + to_string(cfg.experiment);
    write_json(path("manifest.json"), {
                                          {"command", command},
                                          {"config", to_json(cfg)},
                                          {"files", files},
                                          {"verdicts", verdicts_},
                                          {"rng", {{"algorithm", Rng::kAlgorithm}, {"seed", cfg.seed}}},
                                      });
    result.files = files_;
    result.exit_code = failures.empty() ? 0 : 1;
    return result;
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
  std::map<std::string, bool> verdicts_;
};

SobolevKind parse_kind(const std::string& name) {
  return name == "homogeneous" ? SobolevKind::homogeneous : SobolevKind::inhomogeneous;
}

void run_eval(const RunConfig& cfg, Collector& out) {
  const AkhmedievParams p = derive_params(cfg.a);
  CsvWriter csv(out.path("eval.csv"), {"t", "x", "re_A", "im_A", "re_Q", "im_Q", "re_Qx", "im_Qx",
                                       "re_stokes", "im_stokes", "re_M", "im_M", "N"});
  double q_identity = 0.0;
  double factor_identity = 0.0;
  for (double t : *cfg.times) {
    for (double x : cfg.x) {
      const Complex A = akhmediev(p, t, x);
      const Complex Q = q_value(p, t, x);
      const Complex Qx = q_x_value(p, t, x);
      const Complex S = stokes(t, p.phase_factor);
      const AppendixFactors f = appendix_factors(p, t, x);
      q_identity = std::max(q_identity, std::abs(A - std::polar(1.0, t) * (p.phase_factor + Q)));
      factor_identity = std::max(factor_identity, std::abs(1.0 + f.M / f.N - A * std::polar(1.0, -t)));
      csv.row({t, x, A.real(), A.imag(), Q.real(), Q.imag(), Qx.real(), Qx.imag(), S.real(), S.imag(),
               f.M.real(), f.M.imag(), f.N});
    }
  }
  out.add("eval.csv");
  out.verdict("q_identity", q_identity < 1e-12);
  out.verdict("appendix_factor_identity", factor_identity < 1e-13);
  out.summary({{"a", p.a},
               {"alpha", p.alpha},
               {"beta", p.beta},
               {"phase_factor", {p.phase_factor.real(), p.phase_factor.imag()}},
               {"period", p.period},
               {"max_q_identity_residual", q_identity},
               {"max_factor_identity_residual", factor_identity}});
}

void run_residual(const RunConfig& cfg, Collector& out) {
  constexpr double kTolerance = 1e-8;
  constexpr double kControlFloor = 1e-2;
  const AkhmedievParams p = derive_params(cfg.a);
  const std::size_t n = *cfg.n_points;
  CsvWriter csv(out.path("residual.csv"), {"a", "t", "n_points", "sup_norm", "l2_norm", "under_resolved"});
  std::vector<double> ts, sups;
  bool all_ok = true;
  for (double t : *cfg.times) {
    const ResidualReport r = residual_report(p, t, n);
    csv.row({p.a, t, static_cast<double>(n), r.sup_norm, r.l2_norm, r.under_resolved ? 1.0 : 0.0});
    ts.push_back(t);
    sups.push_back(r.sup_norm);
    all_ok = all_ok && r.sup_norm <= kTolerance;
  }
  out.add("residual.csv");

  const PeriodicGrid grid(n, p.period);
  const auto control = SampledField::sample(grid, [&](double x) { return Complex(1.0 + 0.1 * std::cos(p.alpha * x)); });
  const double control_sup = ode_operator(control, p.alpha2()).field.max_abs();

  out.verdict("residual_sup_norm_le_1e-8", all_ok);
  out.verdict("control_sup_norm_gt_1e-2", control_sup > kControlFloor);
  out.summary({{"a", p.a}, {"n_points", n}, {"tolerance", kTolerance},
               {"max_sup_norm", *std::max_element(sups.begin(), sups.end())},
               {"control_sup_norm", control_sup}});
  if (cfg.emit_plots) {
    write_svg_plot(out.path("residual.svg"), "ODE residual sup norm", "t", "sup norm",
                   {{"a = " + format_double(p.a), ts, sups}}, true);
    out.add("residual.svg");
  }
}

void run_verify_appendix(const RunConfig&, Collector& out) {
  const auto verdicts = verify_coefficients();
  CsvWriter csv(out.path("coefficients.csv"), {"index", "prefactor", "basis", "is_zero", "residual"});
  int zeros = 0;
  for (const auto& v : verdicts) {
    std::string pre = v.prefactor.sqrt_2a ? "sqrt(2a)" : "";
    if (v.prefactor.i_beta) pre += pre.empty() ? "i*beta" : "*i*beta";
    if (pre.empty()) pre = "1";
    const auto& spec = coefficient_table()[static_cast<std::size_t>(v.index - 1)];
    csv.row(std::vector<std::string>{std::to_string(v.index), pre, spec.basis, v.is_zero ? "1" : "0",
                                     "\"" + v.residual() + "\""});
    zeros += v.is_zero ? 1 : 0;
  }
  out.add("coefficients.csv");
  const CoefficientVerdict control = verify_coefficient(1, wrong_beta_ring());
  out.verdict("all_coefficients_zero", zeros == static_cast<int>(verdicts.size()));
  out.verdict("negative_control_nonzero", !control.is_zero);
  out.summary({{"zero_coefficients", zeros},
               {"total_coefficients", verdicts.size()},
               {"negative_control", {{"index", 1}, {"relation", "beta^2 -> 8a"}, {"residual", control.residual()}}}});
}

void run_conserved(const RunConfig& cfg, Collector& out) {
  const AkhmedievParams p = derive_params(cfg.a);
  const PeriodicGrid grid(*cfg.n_points, p.period);
  CsvWriter csv(out.path("functionals.csv"), {"t", "M", "E", "F", "H"});
  std::vector<FunctionalReport> reports;
  for (double t : *cfg.times) {
    const auto f = SampledField::sample(grid, [&](double x) { return akhmediev(p, t, x); });
    reports.push_back(evaluate_functionals(f, p.alpha2(), t));
    const auto& r = reports.back();
    csv.row({t, r.mass, r.energy, r.f_value, r.h_value});
  }
  out.add("functionals.csv");
  const auto& ref = reports.front();
  const auto within = [](double v, double v0) { return std::abs(v - v0) <= 1e-8 * (1.0 + std::abs(v0)); };
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && within(r.mass, ref.mass) && within(r.energy, ref.energy) &&
         within(r.f_value, ref.f_value) && within(r.h_value, ref.h_value);
  }
  out.verdict("functionals_time_invariant", ok);
  out.summary({{"a", p.a}, {"mass", ref.mass}, {"energy", ref.energy}, {"f_value", ref.f_value}, {"h_value", ref.h_value}});
}

SolverConfig solver_config(const RunConfig& cfg, double alpha2) {
  SolverConfig s;
  s.dt = cfg.dt;
  s.n_points = *cfg.n_points;
  s.t_start = (*cfg.t_span)[0];
  s.t_end = (*cfg.t_span)[1];
  s.scheme = parse_scheme(cfg.scheme);
  s.snapshot_stride = cfg.snapshot_stride;
  s.diagnostic_alpha2 = alpha2;
  return s;
}

void run_evolve(const RunConfig& cfg, Collector& out) {
  const AkhmedievParams p = derive_params(cfg.a);
  const PeriodicGrid grid(*cfg.n_points, p.period);
  const SolverConfig scfg = solver_config(cfg, p.alpha2());
  const auto u0 = SampledField::sample(grid, [&](double x) { return akhmediev(p, scfg.t_start, x); });
  const Trajectory traj = evolve(u0, scfg);
  for (const auto& rel : write_trajectory(traj, out.path("trajectory"))) out.add(fs::path("trajectory") / rel);

  CsvWriter csv(out.path("errors.csv"), {"t", "l2_error_vs_closed_form"});
  std::vector<double> ts, errs;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const double t = traj.times[k];
    const auto exact = SampledField::sample(grid, [&](double x) { return akhmediev(p, t, x); });
    const double e = l2_norm(traj.snapshots[k] - exact);
    csv.row({t, e});
    ts.push_back(t);
    errs.push_back(e);
  }
  out.add("errors.csv");

  const FunctionalScales scale = trajectory_scales(traj);
  const auto& d0 = traj.diagnostics.front();
  double mass_drift = 0.0, energy_drift = 0.0;
  for (const auto& d : traj.diagnostics) {
    mass_drift = std::max(mass_drift, std::abs(d.mass - d0.mass) / scale.mass);
    energy_drift = std::max(energy_drift, std::abs(d.energy - d0.energy) / scale.energy);
  }
  out.verdict("no_blowup", !traj.blew_up);
  out.verdict("mass_drift_le_1e-10", mass_drift <= 1e-10);
  out.verdict("energy_drift_le_1e-6", energy_drift <= 1e-6);
  out.summary({{"a", p.a}, {"final_time", traj.times.back()}, {"final_l2_error", errs.back()},
               {"relative_mass_drift", mass_drift}, {"relative_energy_drift", energy_drift},
               {"blew_up", traj.blew_up}, {"steps_taken", traj.steps_taken}});
  if (cfg.emit_plots) {
    const auto& fin = traj.final_state();
    std::vector<double> xs = grid.nodes(), num, exact;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      num.push_back(std::abs(fin[j]));
      exact.push_back(std::abs(akhmediev(p, traj.times.back(), xs[j])));
    }
    write_svg_plot(out.path("profile.svg"), "|u| at final time", "x", "|u|",
                   {{"split-step", xs, num}, {"closed form", xs, exact}});
    write_svg_plot(out.path("errors.svg"), "L2 error vs closed form", "t", "error", {{"error", ts, errs}}, true);
    out.add("profile.svg");
    out.add("errors.svg");
  }
}

void run_instability(const RunConfig& cfg, Collector& out) {
  const AkhmedievParams p = derive_params(cfg.a);
  const InstabilityReport rep = instability_report(p, cfg.s, cfg.T_values, parse_kind(cfg.convention), *cfg.n_points);
  CsvWriter csv(out.path("instability.csv"), {"T", "eps", "d0", "ratio"});
  std::vector<double> T, eps, ratio;
  bool increasing = true;
  double d0_min = rep.rows.front().d0, d0_max = d0_min;
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    const auto& r = rep.rows[k];
    csv.row({r.T, r.eps, r.d0, r.ratio});
    T.push_back(r.T);
    eps.push_back(r.eps);
    ratio.push_back(r.ratio);
    if (k > 0) increasing = increasing && r.ratio > rep.rows[k - 1].ratio;
    d0_min = std::min(d0_min, r.d0);
    d0_max = std::max(d0_max, r.d0);
  }
  out.add("instability.csv");
  out.verdict("ratio_increasing", increasing);
  out.verdict("d0_constant", d0_max - d0_min <= 1e-8);
  out.verdict("d0_positive", d0_min > 0.0);
  out.summary({{"a", p.a}, {"s", rep.s}, {"convention", to_string(rep.kind)},
               {"beta", p.beta}, {"fitted_decay_rate", rep.fitted_decay_rate},
               {"c_s", rep.c_s_estimate}, {"c_s_other_convention", rep.c_s_other_convention},
               {"ratio_growth", rep.rows.back().ratio / rep.rows.front().ratio}});
  if (cfg.emit_plots) {
    write_svg_plot(out.path("instability.svg"), "Instability ratio", "T", "value",
                   {{"eps = ||Q(T)||", T, eps}, {"d0 / eps", T, ratio}}, true);
    out.add("instability.svg");
  }
}

void run_q_decay(const RunConfig& cfg, Collector& out) {
  const AkhmedievParams p = derive_params(cfg.a);
  const QDecayScan scan = q_decay_scan(p, cfg.s, cfg.T_values, *cfg.n_points);
  CsvWriter csv(out.path("q_decay.csv"), {"T", "l2", "h1", "hs", "hs_inhomogeneous", "interpolation_bound"});
  bool decreasing = true;
  bool interpolation = true;
  std::vector<double> T, h1, hs;
  for (std::size_t k = 0; k < scan.rows.size(); ++k) {
    const auto& r = scan.rows[k];
    const double bound = std::pow(r.l2, 1.0 - scan.s) * std::pow(r.h1, scan.s);
    csv.row({r.T, r.l2, r.h1, r.hs, r.hs_inhomogeneous, bound});
    if (k > 0) decreasing = decreasing && r.h1 < scan.rows[k - 1].h1;
    if (scan.s > 0.0 && scan.s < 1.0) interpolation = interpolation && r.hs <= bound * (1.0 + 1e-12);
    T.push_back(r.T);
    h1.push_back(r.h1);
    hs.push_back(r.hs);
  }
  out.add("q_decay.csv");
  out.verdict("h1_strictly_decreasing", decreasing);
  out.verdict("interpolation_holds", interpolation);
  out.verdict("rate_within_5pct_of_beta", std::abs(scan.fitted_rate - p.beta) <= 0.05 * p.beta);
  out.summary({{"a", p.a}, {"s", scan.s}, {"beta", p.beta}, {"fitted_rate", scan.fitted_rate}});
  if (cfg.emit_plots) {
    write_svg_plot(out.path("q_decay.svg"), "Decay of Q(T)", "T", "norm",
                   {{"H1", T, h1}, {"Hs", T, hs}}, true);
    out.add("q_decay.svg");
  }
}

void run_mi(const RunConfig& cfg, Collector& out) {
  const AkhmedievParams p = derive_params(cfg.a);
  const SolverConfig scfg = solver_config(cfg, p.alpha2());
  const MiGrowth g = mi_growth_rate(p, cfg.delta, scfg, cfg.mode);
  CsvWriter csv(out.path("mi.csv"), {"t", "amplitude"});
  for (std::size_t k = 0; k < g.times.size(); ++k) csv.row({g.times[k], g.amplitude[k]});
  out.add("mi.csv");
  const bool ok = g.oracle > 0.0 ? std::abs(g.sigma - g.oracle) <= 0.02 * g.oracle : std::abs(g.sigma) < 0.05;
  out.verdict("rate_matches_linear_theory", ok);
  out.verdict("no_blowup", !g.blew_up);
  out.summary({{"a", p.a}, {"mode", g.mode}, {"wavenumber", g.wavenumber}, {"sigma", g.sigma},
               {"oracle", g.oracle}, {"oscillation", g.oscillation}, {"log_slope", g.log_slope},
               {"window_end", g.window_end}, {"window_short", g.window_short}});
  if (cfg.emit_plots) {
    write_svg_plot(out.path("mi.svg"), "Sideband amplitude", "t", "amplitude",
                   {{"mode " + std::to_string(g.mode), g.times, g.amplitude}}, true);
    out.add("mi.svg");
  }
}

void run_divergence(const RunConfig& cfg, Collector& out) {
  const AkhmedievParams p = derive_params(cfg.a);
  const PeriodicGrid grid(*cfg.n_points, p.period);
  const SolverConfig scfg = solver_config(cfg, p.alpha2());
  const double t0 = scfg.t_start;
  SampledField w0 = SampledField::constant(grid, 0.0);
  if (cfg.perturbation_kind == "random") {
    Rng rng(cfg.seed);
    w0 = random_band_limited(grid, 8, cfg.perturbation, rng);
  } else if (cfg.perturbation_kind == "stokes") {
    w0 = SampledField::sample(grid, [&](double x) { return -std::polar(1.0, t0) * attractor_deviation(p, t0, x); });
  }
  const DivergenceReport rep = breather_perturbation_divergence(p, w0, scfg, cfg.s);
  CsvWriter csv(out.path("divergence.csv"), {"t", "distance"});
  std::vector<double> ts, ds;
  for (const auto& r : rep.rows) {
    csv.row({r.t, r.distance});
    ts.push_back(r.t);
    ds.push_back(r.distance);
  }
  out.add("divergence.csv");
  out.summary({{"a", p.a}, {"s", cfg.s}, {"perturbation_kind", cfg.perturbation_kind},
               {"w0_norm", rep.w0_norm}, {"max_distance", *std::max_element(ds.begin(), ds.end())},
               {"blew_up", rep.blew_up}});
  if (cfg.emit_plots) {
    write_svg_plot(out.path("divergence.svg"), "Distance to the breather orbit", "t", "distance",
                   {{"modulated distance", ts, ds}}, true);
    out.add("divergence.svg");
  }
}

}  // namespace

RunResult run(const RunConfig& input, std::ostream& log) {
  input.validate();
  const RunConfig cfg = input.resolved();
  Collector out(cfg.output_dir);
  const auto start = std::chrono::steady_clock::now();
  switch (cfg.subcommand) {
    case Subcommand::eval: run_eval(cfg, out); break;
    case Subcommand::residual: run_residual(cfg, out); break;
    case Subcommand::verify_appendix: run_verify_appendix(cfg, out); break;
    case Subcommand::conserved: run_conserved(cfg, out); break;
    case Subcommand::evolve: run_evolve(cfg, out); break;
    case Subcommand::experiment:
      switch (cfg.experiment) {
        case ExperimentKind::instability: run_instability(cfg, out); break;
        case ExperimentKind::q_decay: run_q_decay(cfg, out); break;
        case ExperimentKind::mi: run_mi(cfg, out); break;
        case ExperimentKind::divergence: run_divergence(cfg, out); break;
      }
      break;
  }
  RunResult result = out.finish(cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Human-readable table; timing goes to the terminal only, never to files.
  log << "akhlab " << to_string(cfg.subcommand);
  if (cfg.subcommand == Subcommand::experiment) log << ' ' << to_string(cfg.experiment);
  log << "  ->  " << cfg.output_dir << "  (" << seconds << " s)\n";
  for (const auto& [name, pass] : result.verdicts) {
    log << "  " << (pass ? "PASS " : "FAIL ") << name << '\n';
  }
  for (const auto& f : result.files) log << "  wrote " << f << '\n';
  return result;
}

namespace {

// "--times -3,0,2" would otherwise read "-3,0,2" as an option name.
std::vector<std::string> glue_list_values(int argc, const char* const* argv) {
  static const std::vector<std::string> list_flags{"--times", "--t-span", "--T", "--x"};
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    if (std::find(list_flags.begin(), list_flags.end(), a) != list_flags.end() && k + 1 < argc) {
      args.push_back(a + "=" + argv[k + 1]);
      ++k;
    } else {
      args.push_back(a);
    }
  }
  return args;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in " + flag);
    }
  }
  if (out.empty()) throw UsageError(flag + " needs at least one value");
  return out;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"akhlab: Akhmediev breather laboratory"};
  app.require_subcommand(1);

  std::string config_file, times, t_span, T_values, xs, scheme, convention, perturbation_kind, out_dir;
  double a = 0, s = 0, dt = 0, delta = 0, perturbation = 0;
  std::size_t n = 0, stride = 0;
  int mode = 0;
  std::uint64_t seed = 0;
  bool plots = false;
  std::string experiment_kind;

  std::vector<CLI::App*> subs;
  for (auto sc : {Subcommand::eval, Subcommand::residual, Subcommand::verify_appendix,
                  Subcommand::conserved, Subcommand::evolve, Subcommand::experiment}) {
    CLI::App* sub = app.add_subcommand(to_string(sc));
    sub->add_option("--config", config_file, "JSON run configuration");
    sub->add_option("--a", a, "breather parameter in (0, 1/2)");
    sub->add_option("--s", s, "Sobolev order");
    sub->add_option("--n", n, "grid points (power of two)");
    sub->add_option("--dt", dt, "time step");
    sub->add_option("--t-span", t_span, "start,end");
    sub->add_option("--scheme", scheme, "strang or lie");
    sub->add_option("--stride", stride, "snapshot stride");
    sub->add_option("--times", times, "comma-separated times");
    sub->add_option("--x", xs, "comma-separated positions");
    sub->add_option("--T", T_values, "comma-separated T values");
    sub->add_option("--delta", delta, "seed amplitude");
    sub->add_option("--mode", mode, "sideband multiple of alpha");
    sub->add_option("--convention", convention, "inhomogeneous or homogeneous");
    sub->add_option("--perturbation-kind", perturbation_kind, "random, zero or stokes");
    sub->add_option("--perturbation", perturbation, "perturbation rms");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--plots", plots, "emit SVG plots");
    sub->add_option("--seed", seed, "random seed");
    if (sc == Subcommand::experiment) {
      sub->add_option("kind", experiment_kind, "instability, q-decay, mi or divergence")->required();
    }
    subs.push_back(sub);
  }

  const std::vector<std::string> glued = glue_list_values(argc, argv);
  std::vector<std::string> reversed(glued.rbegin(), glued.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = nullptr;
  for (auto* sub : subs) {
    if (sub->parsed()) chosen = sub;
  }
  const auto given = [&](const char* flag) { return chosen->count(flag) > 0; };

  try {
    RunConfig cfg;
    if (given("--config")) {
      std::ifstream in(config_file);
      if (!in) throw UsageError("cannot read config file " + config_file);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
      }
      cfg = apply_json(doc);
    }
    cfg.subcommand = parse_subcommand(chosen->get_name());
    if (cfg.subcommand == Subcommand::experiment) cfg.experiment = parse_experiment(experiment_kind);
    if (given("--a")) cfg.a = a;
    if (given("--s")) cfg.s = s;
    if (given("--n")) cfg.n_points = n;
    if (given("--dt")) cfg.dt = dt;
    if (given("--t-span")) cfg.t_span = parse_list(t_span, "--t-span");
    if (given("--scheme")) cfg.scheme = scheme;
    if (given("--stride")) cfg.snapshot_stride = stride;
    if (given("--times")) cfg.times = parse_list(times, "--times");
    if (given("--x")) cfg.x = parse_list(xs, "--x");
    if (given("--T")) cfg.T_values = parse_list(T_values, "--T");
    if (given("--delta")) cfg.delta = delta;
    if (given("--mode")) cfg.mode = mode;
    if (given("--convention")) cfg.convention = convention;
    if (given("--perturbation-kind")) cfg.perturbation_kind = perturbation_kind;
    if (given("--perturbation")) cfg.perturbation = perturbation;
    if (given("--out")) cfg.output_dir = out_dir;
    if (given("--plots")) cfg.emit_plots = plots;
    if (given("--seed")) cfg.seed = seed;
    cfg.validate();
    return run(cfg, out).exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace akhlab::cli

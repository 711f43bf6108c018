#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace akhlab::cli {

enum class Subcommand { eval, residual, verify_appendix, conserved, evolve, experiment };
enum class ExperimentKind { instability, q_decay, mi, divergence };

const char* to_string(Subcommand s);
const char* to_string(ExperimentKind k);
Subcommand parse_subcommand(const std::string& name);
ExperimentKind parse_experiment(const std::string& name);

/// Invalid configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run depends on. Optional fields fall back to per-subcommand
/// defaults (see resolved()).
struct RunConfig {
  Subcommand subcommand = Subcommand::eval;
  ExperimentKind experiment = ExperimentKind::instability;
  double a = 0.25;
  double s = 0.6;
  std::optional<std::size_t> n_points;
  double dt = 5e-4;
  std::optional<std::vector<double>> t_span;
  std::string scheme = "strang";
  std::size_t snapshot_stride = 100;
  std::optional<std::vector<double>> times;
  std::vector<double> x{0.0};
  std::vector<double> T_values{2.0, 4.0, 6.0, 8.0};
  double delta = 1e-4;
  int mode = 1;
  std::string convention = "inhomogeneous";
  std::string perturbation_kind = "random";
  double perturbation = 1e-3;
  std::string output_dir = "akhlab_out";
  bool emit_plots = false;
  std::uint64_t seed = 1;

  /// Copy with every optional filled in for the chosen subcommand.
  RunConfig resolved() const;
  /// Throws UsageError.
  void validate() const;
};

/// Strict: unknown keys or wrongly typed values throw UsageError.
RunConfig apply_json(const nlohmann::json& doc, RunConfig base = {});
nlohmann::json to_json(const RunConfig& cfg);

struct RunResult {
  int exit_code = 0;
  std::map<std::string, bool> verdicts;
  std::vector<std::string> files;  // relative to output_dir
};

/// Executes one configured run, writing artifacts and manifest.json into
/// output_dir. Exit code 0 iff every verdict passes, 1 otherwise.
RunResult run(const RunConfig& cfg, std::ostream& log);

/// Full command line handling: `akhlab <subcommand> [--config file] [flags]`.
/// Returns the process exit status (2 on usage errors).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace akhlab::cli

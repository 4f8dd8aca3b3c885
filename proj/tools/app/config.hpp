#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dickecat::app {

enum class ExperimentKind { kHeraldScan, kGSweep, kNSweep, kOmegaSweep, kThermoSweep, kWigner, kConvergence };

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view text);

/// Invalid configuration. line() is 1-based, 0 when the problem has no source
/// position (a command-line override, a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct WignerPatch {
  double theta_max = 1.0;
  int theta_points = 201;
  int phi_points = 201;
  bool include_unheralded = true;
};

struct SolverSettings {
  double tolerance = 1e-10;
  int max_iterations = 5000;
};

struct SweepConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::kHeraldScan;
  std::vector<int> atoms;
  std::vector<double> g_over_gc;
  std::vector<double> distances;  ///< 1 - g/g_c, thermo-sweep only
  std::vector<double> omega_ratio;
  std::vector<int> photons;
  int photon_cutoff = 50;
  std::vector<int> convergence_cutoffs;
  WignerPatch wigner;
  SolverSettings solver;
  std::filesystem::path output_dir;
  std::filesystem::path cache_dir;
  bool use_cache = true;
  int workers = 1;
  std::string source;  ///< the YAML text after overrides, echoed in the manifest

  /// Number of independent work items (ground states, or thermo points).
  std::size_t point_count() const;
};

struct Override {
  std::string key;    ///< dotted path, e.g. "wigner.theta_max"
  std::string value;  ///< YAML scalar or flow sequence
};

/// Parses "key=value"; throws ConfigError without a line number.
Override parse_override(std::string_view text);

/// Parses and validates a configuration document. Overrides are applied to the
/// document before validation.
SweepConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});
SweepConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides = {});

/// DICKECAT_OUTPUT_DIR, DICKECAT_WORKERS and DICKECAT_CACHE_DIR take precedence
/// over the file; malformed values throw ConfigError.
void apply_environment(SweepConfig& config);

std::filesystem::path default_cache_dir();

}  // namespace dickecat::app

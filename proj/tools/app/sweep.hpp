#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace dickecat::app {

/// One line of the sweep CSV. Thermodynamic-limit rows have atoms = 0 (written
/// as "inf") and theta_opt = NaN; their l_opt is 2 beta_opt.
struct SweepRow {
  int atoms = 0;
  double g_over_gc = 0.0;
  double omega_ratio = 1.0;
  int photons = 0;
  double probability = 0.0;
  double theta_opt = 0.0;
  double l_opt = 0.0;
  double fidelity = 0.0;
};

struct ConvergenceRow {
  SweepRow row;
  int photon_cutoff = 0;
};

inline constexpr const char* kSweepCsvHeader = "N,g_over_gc,omega_ratio,n,P_n,theta_opt,l_opt,fidelity";

/// %.17g for finite values, "nan"/"inf" otherwise.
std::string format_number(double value);
std::string format_row(const SweepRow& row);

struct PointReport {
  std::string label;
  bool ok = true;
  std::string message;
  double seconds = 0.0;
  long long solver_iterations = 0;
  int cache_hits = 0;
  int cache_misses = 0;
};

struct RunSummary {
  std::vector<PointReport> points;
  std::vector<std::filesystem::path> files;
  long long solver_iterations = 0;
  int cache_hits = 0;
  int cache_misses = 0;

  std::size_t failures() const;
  /// 0 all points succeeded, 2 some failed, 3 all failed.
  int exit_code() const;
};

/// Runs every grid point of the configuration and writes
///   <output_dir>/<name>.csv, <output_dir>/manifest.json,
///   <output_dir>/<name>_convergence.csv (convergence runs),
///   <output_dir>/<name>_outcomes.jsonl (finite-N runs: one herald record per line),
///   <output_dir>/wigner/*.csv (wigner runs).
/// Rows appear in grid order regardless of worker count. Progress and cache
/// warnings go to `log`.
RunSummary run_sweep(const SweepConfig& config, std::ostream& log);

}  // namespace dickecat::app

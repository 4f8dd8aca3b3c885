#include "sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "cache.hpp"
#include "dickecat/cat_fit.hpp"
#include "dickecat/dicke.hpp"
#include "dickecat/errors.hpp"
#include "dickecat/herald.hpp"
#include "dickecat/serialize.hpp"
#include "dickecat/thermo.hpp"
#include "dickecat/wigner.hpp"

#ifndef DICKECAT_VERSION
#define DICKECAT_VERSION "unknown"
#endif

namespace dickecat::app {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string short_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

struct EdPoint {
  int atoms;
  double g_over_gc;
  double omega_ratio;
};

struct ThermoPoint {
  double distance;  ///< 1 - g/g_c; NaN when given as g/g_c
  double g_over_gc;
  int photons;
};

struct PointOutput {
  PointReport report;
  std::vector<SweepRow> rows;
  std::vector<std::string> outcomes;  ///< herald records, one JSON object per line
  std::vector<ConvergenceRow> convergence;
  std::vector<std::filesystem::path> files;
};

class Runner {
 public:
  Runner(const SweepConfig& config, std::ostream& log)
      : config_(config), log_(log), cache_(config.cache_dir, log) {}

  PointOutput run_ed(const EdPoint& p) {
    PointOutput out;
    out.report.label = "N=" + std::to_string(p.atoms) + " g/g_c=" + short_number(p.g_over_gc) +
                       " omega_ratio=" + short_number(p.omega_ratio);
    const GroundState ground = solve(p, config_.photon_cutoff, out.report);
    out.rows = herald_rows(ground, p, &out.outcomes);

    if (config_.kind == ExperimentKind::kConvergence) {
      for (int cutoff : config_.convergence_cutoffs) {
        const GroundState g = cutoff == config_.photon_cutoff ? ground : solve(p, cutoff, out.report);
        for (const SweepRow& row : herald_rows(g, p, nullptr)) out.convergence.push_back({row, cutoff});
      }
    }
    if (config_.kind == ExperimentKind::kWigner) out.files = write_wigner(ground, p);
    return out;
  }

  PointOutput run_thermo(const ThermoPoint& p) {
    PointOutput out;
    const bool by_distance = !std::isnan(p.distance);
    out.report.label = (by_distance ? "1-g/g_c=" + short_number(p.distance) : "g/g_c=" + short_number(p.g_over_gc)) +
                       " n=" + std::to_string(p.photons);
    const GaussianGroundState gs =
        by_distance ? gaussian_ground_near_critical(1.0, p.distance) : gaussian_ground(1.0, p.g_over_gc);
    SweepRow row;
    row.atoms = 0;
    row.g_over_gc = by_distance ? 1.0 - p.distance : p.g_over_gc;
    row.omega_ratio = 1.0;
    row.photons = p.photons;
    row.theta_opt = kNaN;
    try {
      const BosonHerald h = herald_thermodynamic(gs, p.photons);
      const BosonCatFit fit = fit_boson_cat(h.state, parity_of(p.photons));
      row.probability = h.probability;
      row.l_opt = lopt_limit(fit.beta_opt);
      row.fidelity = fit.fidelity;
    } catch (const DegenerateStateError&) {
      row.probability = 0.0;
      row.l_opt = kNaN;
      row.fidelity = kNaN;
    }
    out.rows.push_back(row);
    return out;
  }

  std::mutex& log_mutex() { return log_mutex_; }
  std::ostream& log() { return log_; }

 private:
  GroundState solve(const EdPoint& p, int cutoff, PointReport& report) {
    const CacheKey key{p.atoms, p.g_over_gc, p.omega_ratio, cutoff, config_.solver.tolerance,
                       config_.solver.max_iterations};
    if (config_.use_cache) {
      if (auto hit = cache_.lookup(key)) {
        ++report.cache_hits;
        return std::move(*hit);
      }
      ++report.cache_misses;
    }
    SolverOptions options;
    options.lanczos.relative_tolerance = config_.solver.tolerance;
    options.lanczos.max_iterations = config_.solver.max_iterations;
    GroundState g = solve_ground_state(DickeParams::at_ratio(p.atoms, p.g_over_gc, p.omega_ratio, cutoff), options);
    report.solver_iterations += g.iterations;
    if (config_.use_cache) cache_.store(key, g);
    return g;
  }

  std::vector<SweepRow> herald_rows(const GroundState& ground, const EdPoint& p,
                                    std::vector<std::string>* outcomes) const {
    const std::vector<double> distribution = photon_distribution(ground);
    std::vector<SweepRow> rows;
    for (int n : config_.photons) {
      SweepRow row{p.atoms, p.g_over_gc, p.omega_ratio, n, distribution[static_cast<std::size_t>(n)],
                   kNaN, kNaN, kNaN};
      try {
        const HeraldOutcome h = herald(ground, n);
        if (outcomes) {
          outcomes->push_back("{\"N\":" + std::to_string(p.atoms) + ",\"g_over_gc\":" + format_number(p.g_over_gc) +
                              ",\"omega_ratio\":" + format_number(p.omega_ratio) +
                              ",\"outcome\":" + herald_outcome_json(h) + "}");
        }
        const CatFit fit = fit_cat(h.state, parity_of(n));
        row.theta_opt = fit.theta_opt;
        row.l_opt = fit.l_opt;
        row.fidelity = fit.fidelity;
      } catch (const DegenerateStateError&) {
        // Outcome never occurs; the row keeps P_n = 0 and no fit.
      }
      rows.push_back(row);
    }
    return rows;
  }

  std::vector<std::filesystem::path> write_wigner(const GroundState& ground, const EdPoint& p) const {
    const auto dir = config_.output_dir / "wigner";
    std::filesystem::create_directories(dir);
    const std::string tag = "N" + std::to_string(p.atoms) + "_g" + short_number(p.g_over_gc) + "_w" +
                            short_number(p.omega_ratio);
    const auto [thetas, phis] =
        patch_axes(config_.wigner.theta_max, config_.wigner.theta_points, config_.wigner.phi_points);
    const SpinWignerTransform transform{ground.basis.spin()};
    std::vector<std::filesystem::path> files;
    auto emit = [&](const SpinDensityMatrix& rho, const std::string& suffix) {
      const auto path = dir / (tag + "_" + suffix + ".csv");
      std::ofstream out(path, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      write_wigner_csv(out, transform.evaluate(rho, thetas, phis, SphereFrame::kGroundStatePole));
      files.push_back(path);
    };
    if (config_.wigner.include_unheralded) emit(reduced_spin_density(ground), "rho");
    for (int n : config_.photons) {
      try {
        emit(SpinDensityMatrix::pure(herald(ground, n).state), "n" + std::to_string(n));
      } catch (const DegenerateStateError&) {
      }
    }
    return files;
  }

  const SweepConfig& config_;
  std::ostream& log_;
  GroundStateCache cache_;
  std::mutex log_mutex_;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string format_row(const SweepRow& row) {
  std::string s = row.atoms == 0 ? "inf" : std::to_string(row.atoms);
  for (double v : {row.g_over_gc, row.omega_ratio}) s += "," + format_number(v);
  s += "," + std::to_string(row.photons);
  for (double v : {row.probability, row.theta_opt, row.l_opt, row.fidelity}) s += "," + format_number(v);
  return s;
}

std::size_t RunSummary::failures() const {
  std::size_t count = 0;
  for (const auto& p : points) count += p.ok ? 0 : 1;
  return count;
}

int RunSummary::exit_code() const {
  const std::size_t failed = failures();
  if (failed == 0) return 0;
  return failed == points.size() ? 3 : 2;
}

RunSummary run_sweep(const SweepConfig& config, std::ostream& log) {
  std::filesystem::create_directories(config.output_dir);
  const auto started = std::chrono::steady_clock::now();

  std::vector<EdPoint> ed_points;
  std::vector<ThermoPoint> thermo_points;
  if (config.kind == ExperimentKind::kThermoSweep) {
    const bool by_distance = !config.distances.empty();
    const auto& axis = by_distance ? config.distances : config.g_over_gc;
    for (double x : axis) {
      for (int n : config.photons) {
        thermo_points.push_back(by_distance ? ThermoPoint{x, 1.0 - x, n} : ThermoPoint{kNaN, x, n});
      }
    }
  } else {
    for (int atoms : config.atoms) {
      for (double g : config.g_over_gc) {
        for (double w : config.omega_ratio) ed_points.push_back({atoms, g, w});
      }
    }
  }
  const std::size_t total = ed_points.empty() ? thermo_points.size() : ed_points.size();

  Runner runner(config, log);
  std::vector<PointOutput> outputs(total);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      PointOutput out;
      try {
        out = ed_points.empty() ? runner.run_thermo(thermo_points[i]) : runner.run_ed(ed_points[i]);
      } catch (const ConvergenceError& e) {
        out.report.ok = false;
        out.report.message = std::string(e.what()) + " (best residual " + format_number(e.best_residual()) + ")";
      } catch (const std::exception& e) {
        out.report.ok = false;
        out.report.message = e.what();
      }
      if (out.report.label.empty()) {
        out.report.label = ed_points.empty()
                               ? "point " + std::to_string(i)
                               : "N=" + std::to_string(ed_points[i].atoms) + " g/g_c=" +
                                     short_number(ed_points[i].g_over_gc) + " omega_ratio=" +
                                     short_number(ed_points[i].omega_ratio);
      }
      if (!out.report.ok) out.rows.clear();
      out.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      {
        const std::lock_guard lock(runner.log_mutex());
        runner.log() << "[" << ++done << "/" << total << "] " << out.report.label << ": "
                     << (out.report.ok ? "ok" : "FAILED: " + out.report.message) << "\n";
      }
      outputs[i] = std::move(out);
    }
  };
  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(total)));
  std::vector<std::jthread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  RunSummary summary;
  std::string csv = std::string(kSweepCsvHeader) + "\n";
  std::string convergence_csv =
      "N,g_over_gc,omega_ratio,photon_cutoff,n,P_n,theta_opt,l_opt,fidelity\n";
  std::string outcomes;
  for (auto& out : outputs) {
    for (const std::string& record : out.outcomes) outcomes += record + "\n";
    for (const SweepRow& row : out.rows) csv += format_row(row) + "\n";
    for (const ConvergenceRow& c : out.convergence) {
      std::string line = format_row(c.row);
      // Insert the cutoff after omega_ratio.
      std::size_t comma = 0;
      for (int k = 0; k < 3; ++k) comma = line.find(',', comma) + 1;
      line.insert(comma, std::to_string(c.photon_cutoff) + ",");
      convergence_csv += line + "\n";
    }
    summary.files.insert(summary.files.end(), out.files.begin(), out.files.end());
    summary.solver_iterations += out.report.solver_iterations;
    summary.cache_hits += out.report.cache_hits;
    summary.cache_misses += out.report.cache_misses;
    summary.points.push_back(std::move(out.report));
  }

  const auto csv_path = config.output_dir / (config.name + ".csv");
  write_text(csv_path, csv);
  summary.files.insert(summary.files.begin(), csv_path);
  if (config.kind == ExperimentKind::kConvergence) {
    const auto path = config.output_dir / (config.name + "_convergence.csv");
    write_text(path, convergence_csv);
    summary.files.insert(summary.files.begin() + 1, path);
  }
  if (!ed_points.empty()) {
    const auto path = config.output_dir / (config.name + "_outcomes.jsonl");
    write_text(path, outcomes);
    summary.files.push_back(path);
  }

  nlohmann::ordered_json manifest;
  manifest["name"] = config.name;
  manifest["experiment"] = std::string(to_string(config.kind));
  manifest["config"] = config.source;
  manifest["versions"] = {
      {"dickecat", DICKECAT_VERSION},
      {"ground_state_format", std::string(kGroundStateFormat)},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"compiler", __VERSION__},
  };
  manifest["workers"] = workers;
  manifest["cache"] = config.use_cache ? config.cache_dir.string() : std::string("disabled");
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& p : summary.points) {
    nlohmann::ordered_json item = {{"point", p.label},
                                   {"status", p.ok ? "ok" : "failed"},
                                   {"seconds", p.seconds},
                                   {"solver_iterations", p.solver_iterations},
                                   {"cache_hits", p.cache_hits},
                                   {"cache_misses", p.cache_misses}};
    if (!p.ok) {
      item["message"] = p.message;
      failures.push_back({{"point", p.label}, {"message", p.message}});
    }
    points.push_back(std::move(item));
  }
  manifest["points"] = std::move(points);
  manifest["failures"] = std::move(failures);
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& f : summary.files) files.push_back(std::filesystem::relative(f, config.output_dir).string());
  manifest["files"] = std::move(files);
  manifest["totals"] = {
      {"points", summary.points.size()},
      {"failed", summary.failures()},
      {"solver_iterations", summary.solver_iterations},
      {"cache_hits", summary.cache_hits},
      {"cache_misses", summary.cache_misses},
      {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()},
  };
  const auto manifest_path = config.output_dir / "manifest.json";
  write_text(manifest_path, manifest.dump(2) + "\n");
  summary.files.push_back(manifest_path);
  return summary;
}

}  // namespace dickecat::app

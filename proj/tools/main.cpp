#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cache.hpp"
#include "config.hpp"
#include "presets.hpp"
#include "sweep.hpp"

namespace {

using namespace dickecat::app;

constexpr int kConfigError = 1;

struct ConfigSource {
  std::string file;
  std::string preset;
  std::vector<std::string> sets;
};

void add_source_options(CLI::App& cmd, ConfigSource& source) {
  cmd.add_option("config", source.file, "Configuration file (YAML)");
  cmd.add_option("--preset", source.preset, "Use a shipped preset instead of a file");
  cmd.add_option("--set", source.sets, "Override a key, e.g. --set atoms=[30,50] or --set wigner.theta_max=0.8");
}

SweepConfig load(const ConfigSource& source) {
  std::vector<Override> overrides;
  for (const auto& s : source.sets) overrides.push_back(parse_override(s));
  if (!source.file.empty() && !source.preset.empty()) {
    throw ConfigError("give either a configuration file or --preset, not both", 0);
  }
  SweepConfig config;
  if (!source.preset.empty()) {
    const Preset* p = find_preset(source.preset);
    if (!p) throw ConfigError("unknown preset '" + source.preset + "' (see 'dickecat presets list')", 0);
    config = parse_config(p->text, overrides);
  } else if (!source.file.empty()) {
    config = load_config(source.file, overrides);
  } else {
    throw ConfigError("no configuration given: pass a file or --preset NAME", 0);
  }
  apply_environment(config);
  return config;
}

std::string describe(const SweepConfig& c) {
  std::string s = "experiment " + std::string(to_string(c.kind)) + ", " + std::to_string(c.point_count()) +
                  " point(s), output " + c.output_dir.string();
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded spin cat states from the Dicke-model ground state"};
  app.set_version_flag("--version", DICKECAT_VERSION);
  app.require_subcommand(1);

  ConfigSource run_source;
  std::optional<std::string> output_dir;
  std::optional<int> workers;
  bool no_cache = false;
  auto* run = app.add_subcommand("run", "Run a sweep and write CSV, Wigner grids and a manifest");
  add_source_options(*run, run_source);
  run->add_option("--output-dir", output_dir, "Output directory (overrides config and DICKECAT_OUTPUT_DIR)");
  run->add_option("--workers", workers, "Worker threads (overrides config and DICKECAT_WORKERS)")
      ->check(CLI::Range(1, 1024));
  run->add_flag("--no-cache", no_cache, "Neither read nor write cached ground states");

  ConfigSource validate_source;
  auto* validate = app.add_subcommand("validate", "Check a configuration without running it");
  add_source_options(*validate, validate_source);

  auto* presets_cmd = app.add_subcommand("presets", "Shipped configurations");
  presets_cmd->require_subcommand(1);
  presets_cmd->add_subcommand("list", "List preset names");
  std::string preset_name;
  auto* show = presets_cmd->add_subcommand("show", "Print a preset");
  show->add_option("name", preset_name, "Preset name")->required();

  std::optional<std::string> cache_dir;
  auto* cache_cmd = app.add_subcommand("cache", "Cached ground states");
  cache_cmd->require_subcommand(1);
  cache_cmd->add_option("--cache-dir", cache_dir, "Cache directory (default: DICKECAT_CACHE_DIR or ~/.cache/dickecat)");
  cache_cmd->add_subcommand("list", "List cache entries");
  cache_cmd->add_subcommand("clear", "Delete all cache entries");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      SweepConfig config = load(run_source);
      if (output_dir) config.output_dir = *output_dir;
      if (workers) config.workers = *workers;
      if (no_cache) config.use_cache = false;
      std::cerr << describe(config) << "\n";
      const RunSummary summary = run_sweep(config, std::cerr);
      std::cerr << summary.points.size() - summary.failures() << "/" << summary.points.size()
                << " point(s) succeeded; " << summary.solver_iterations << " solver iterations, "
                << summary.cache_hits << " cache hit(s)\n";
      for (const auto& p : summary.points) {
        if (!p.ok) std::cerr << "  failed: " << p.label << ": " << p.message << "\n";
      }
      for (const auto& f : summary.files) std::cout << f.string() << "\n";
      return summary.exit_code();
    }
    if (validate->parsed()) {
      const SweepConfig config = load(validate_source);
      std::cout << "ok: " << describe(config) << "\n";
      return 0;
    }
    if (presets_cmd->parsed()) {
      if (show->parsed()) {
        const Preset* p = find_preset(preset_name);
        if (!p) {
          std::cerr << "error: unknown preset '" << preset_name << "'\n";
          return kConfigError;
        }
        std::cout << p->text;
        return 0;
      }
      for (const Preset& p : presets()) std::cout << p.name << "\n";
      return 0;
    }
    if (cache_cmd->parsed()) {
      std::filesystem::path dir = default_cache_dir();
      if (const char* env = std::getenv("DICKECAT_CACHE_DIR"); env && *env) dir = env;
      if (cache_dir) dir = *cache_dir;
      GroundStateCache cache(dir, std::cerr);
      if (cache_cmd->got_subcommand("clear")) {
        std::cout << "removed " << cache.clear() << " entr(ies) from " << dir.string() << "\n";
        return 0;
      }
      std::uintmax_t bytes = 0;
      for (const auto& e : cache.entries()) {
        std::cout << e.path.filename().string() << "\t" << e.bytes << "\n";
        bytes += e.bytes;
      }
      std::cerr << cache.entries().size() << " entr(ies), " << bytes << " bytes in " << dir.string() << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

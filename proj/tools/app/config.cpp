#include "config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include <yaml-cpp/yaml.h>

namespace dickecat::app {
namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 7> kKindNames{{
    {ExperimentKind::kHeraldScan, "herald-scan"},
    {ExperimentKind::kGSweep, "g-sweep"},
    {ExperimentKind::kNSweep, "N-sweep"},
    {ExperimentKind::kOmegaSweep, "omega-sweep"},
    {ExperimentKind::kThermoSweep, "thermo-sweep"},
    {ExperimentKind::kWigner, "wigner"},
    {ExperimentKind::kConvergence, "convergence"},
}};

const std::set<std::string> kTopLevelKeys = {
    "name",   "experiment", "atoms",      "g_over_gc", "distances", "omega_ratio", "photons",
    "photon_cutoff", "convergence", "wigner", "solver", "output_dir", "cache", "cache_dir",
    "workers"};
const std::set<std::string> kWignerKeys = {"theta_max", "theta_points", "phi_points",
                                           "include_unheralded"};
const std::set<std::string> kSolverKeys = {"tolerance", "max_iterations"};
const std::set<std::string> kConvergenceKeys = {"cutoffs"};

// Resolves error positions: nodes that came from a command-line override have
// no meaningful line in the file.
class Reader {
 public:
  explicit Reader(std::set<std::string> overridden) : overridden_(std::move(overridden)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& key, const std::string& message) const {
    if (is_overridden(key)) throw ConfigError(message + " (from --set " + key + ")", 0);
    const int line = node.IsDefined() && node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
    throw ConfigError(message, line);
  }

  template <typename T>
  T scalar(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key, "'" + key + "' must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, key, "'" + key + "' has an invalid value '" + node.Scalar() + "'");
    }
  }

  std::vector<double> real_grid(const YAML::Node& node, const std::string& key) const {
    if (node.IsScalar()) return {scalar<double>(node, key)};
    if (node.IsSequence()) {
      std::vector<double> out;
      for (const auto& item : node) out.push_back(scalar<double>(item, key));
      return out;
    }
    if (node.IsMap() && node.size() == 1) {
      const std::string form = node.begin()->first.as<std::string>();
      const YAML::Node args = node.begin()->second;
      if ((form == "linspace" || form == "logspace") && args.IsSequence() && args.size() == 3) {
        const double first = scalar<double>(args[0], key);
        const double last = scalar<double>(args[1], key);
        const int count = scalar<int>(args[2], key);
        if (count < 1) fail(args[2], key, "'" + key + "' " + form + " needs a positive count");
        if (form == "logspace" && !(first > 0.0 && last > 0.0)) {
          fail(args, key, "'" + key + "' logspace endpoints must be positive");
        }
        std::vector<double> out;
        for (int i = 0; i < count; ++i) {
          const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
          out.push_back(form == "linspace" ? first + t * (last - first)
                                           : std::exp(std::log(first) + t * (std::log(last) - std::log(first))));
        }
        if (count > 1) out.back() = last;
        return out;
      }
    }
    fail(node, key,
         "'" + key + "' must be a number, a list, {linspace: [a, b, count]} or {logspace: [a, b, count]}");
  }

  std::vector<int> integer_grid(const YAML::Node& node, const std::string& key) const {
    if (node.IsScalar()) return {scalar<int>(node, key)};
    if (node.IsSequence()) {
      std::vector<int> out;
      for (const auto& item : node) out.push_back(scalar<int>(item, key));
      return out;
    }
    if (node.IsMap() && node.size() == 1 && node.begin()->first.as<std::string>() == "range") {
      const YAML::Node args = node.begin()->second;
      if (args.IsSequence() && (args.size() == 2 || args.size() == 3)) {
        const int first = scalar<int>(args[0], key);
        const int last = scalar<int>(args[1], key);
        const int step = args.size() == 3 ? scalar<int>(args[2], key) : 1;
        if (step <= 0) fail(args, key, "'" + key + "' range step must be positive");
        std::vector<int> out;
        for (int v = first; v <= last; v += step) out.push_back(v);
        return out;
      }
    }
    fail(node, key, "'" + key + "' must be an integer, a list or {range: [first, last, step]}");
  }

  void check_keys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& prefix) const {
    if (!map.IsMap()) fail(map, prefix, "'" + prefix + "' must be a mapping");
    for (const auto& entry : map) {
      const std::string key = entry.first.as<std::string>();
      if (!allowed.contains(key)) {
        const std::string full = prefix.empty() ? key : prefix + "." + key;
        fail(entry.first, full, "unknown key '" + full + "'");
      }
    }
  }

 private:
  bool is_overridden(const std::string& key) const {
    for (const auto& o : overridden_) {
      if (o == key || key.starts_with(o + ".") || o.starts_with(key + ".")) return true;
    }
    return false;
  }

  std::set<std::string> overridden_;
};

YAML::Node load_document(std::string_view text) {
  try {
    YAML::Node doc = YAML::Load(std::string(text));
    if (doc.IsNull()) throw ConfigError("configuration is empty", 0);
    if (!doc.IsMap()) throw ConfigError("configuration must be a mapping of keys to values", doc.Mark().line + 1);
    return doc;
  } catch (const YAML::ParserException& e) {
    throw ConfigError("syntax error: " + e.msg, e.mark.line + 1);
  }
}

void apply_override(YAML::Node& doc, const Override& o) {
  YAML::Node value;
  try {
    value = YAML::Load(o.value);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("--set " + o.key + ": cannot parse value '" + o.value + "'", 0);
  }
  std::vector<std::string> parts;
  std::stringstream path(o.key);
  for (std::string part; std::getline(path, part, '.');) {
    if (part.empty()) throw ConfigError("--set: malformed key '" + o.key + "'", 0);
    parts.push_back(part);
  }
  if (parts.empty() || parts.size() > 2) throw ConfigError("--set: malformed key '" + o.key + "'", 0);
  if (parts.size() == 1) {
    doc[parts[0]] = value;
  } else {
    YAML::Node section = doc[parts[0]];
    if (section.IsDefined() && !section.IsMap() && !section.IsNull()) {
      throw ConfigError("--set " + o.key + ": '" + parts[0] + "' is not a section", 0);
    }
    section[parts[1]] = value;
  }
}

bool is_ed_kind(ExperimentKind kind) { return kind != ExperimentKind::kThermoSweep; }

template <typename T>
void require_nonempty(const Reader& r, const YAML::Node& node, const std::string& key, const std::vector<T>& grid) {
  if (grid.empty()) r.fail(node, key, "grid '" + key + "' is empty");
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::size_t SweepConfig::point_count() const {
  if (kind == ExperimentKind::kThermoSweep) {
    return std::max(g_over_gc.size(), distances.size()) * photons.size();
  }
  return atoms.size() * g_over_gc.size() * omega_ratio.size();
}

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("--set expects key=value, got '" + std::string(text) + "'", 0);
  }
  return Override{std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

SweepConfig parse_config(std::string_view text, const std::vector<Override>& overrides) {
  YAML::Node doc = load_document(text);
  std::set<std::string> overridden;
  for (const auto& o : overrides) {
    apply_override(doc, o);
    overridden.insert(o.key);
  }
  const Reader r(overridden);
  r.check_keys(doc, kTopLevelKeys, "");

  SweepConfig c;
  const YAML::Node kind_node = doc["experiment"];
  if (!kind_node) throw ConfigError("missing required key 'experiment'", 0);
  const auto kind = parse_experiment_kind(r.scalar<std::string>(kind_node, "experiment"));
  if (!kind) {
    r.fail(kind_node, "experiment",
           "unknown experiment '" + kind_node.Scalar() +
               "' (expected herald-scan, g-sweep, N-sweep, omega-sweep, thermo-sweep, wigner or convergence)");
  }
  c.kind = *kind;
  c.name = doc["name"] ? r.scalar<std::string>(doc["name"], "name") : std::string(to_string(c.kind));
  if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
    r.fail(doc["name"], "name", "'name' must be a non-empty file-name-safe string");
  }

  auto require = [&](const char* key) {
    if (!doc[key]) {
      throw ConfigError("experiment '" + std::string(to_string(c.kind)) + "' requires '" + key + "'", 0);
    }
    return doc[key];
  };
  auto forbid = [&](const char* key) {
    if (doc[key]) {
      r.fail(doc[key], key, "'" + std::string(key) + "' does not apply to experiment '" +
                                std::string(to_string(c.kind)) + "'");
    }
  };

  if (doc["photon_cutoff"]) {
    c.photon_cutoff = r.scalar<int>(doc["photon_cutoff"], "photon_cutoff");
    if (c.photon_cutoff < 1) r.fail(doc["photon_cutoff"], "photon_cutoff", "'photon_cutoff' must be at least 1");
  }

  const YAML::Node photons = require("photons");
  c.photons = r.integer_grid(photons, "photons");
  require_nonempty(r, photons, "photons", c.photons);
  for (int n : c.photons) {
    if (n < 0) r.fail(photons, "photons", "photon numbers must be non-negative");
    if (is_ed_kind(c.kind) && n > c.photon_cutoff) {
      r.fail(photons, "photons", "photon number " + std::to_string(n) + " exceeds photon_cutoff " +
                                     std::to_string(c.photon_cutoff));
    }
  }

  if (is_ed_kind(c.kind)) {
    forbid("distances");
    const YAML::Node atoms = require("atoms");
    c.atoms = r.integer_grid(atoms, "atoms");
    require_nonempty(r, atoms, "atoms", c.atoms);
    for (int n : c.atoms) {
      if (n < 1) r.fail(atoms, "atoms", "atom numbers must be at least 1");
    }
    const YAML::Node g = require("g_over_gc");
    c.g_over_gc = r.real_grid(g, "g_over_gc");
    require_nonempty(r, g, "g_over_gc", c.g_over_gc);
    for (double v : c.g_over_gc) {
      if (!(v >= 0.0 && std::isfinite(v))) r.fail(g, "g_over_gc", "g_over_gc values must be finite and >= 0");
    }
    if (c.kind == ExperimentKind::kOmegaSweep) require("omega_ratio");
    if (doc["omega_ratio"]) {
      c.omega_ratio = r.real_grid(doc["omega_ratio"], "omega_ratio");
      require_nonempty(r, doc["omega_ratio"], "omega_ratio", c.omega_ratio);
      for (double v : c.omega_ratio) {
        if (!(v > 0.0 && std::isfinite(v))) {
          r.fail(doc["omega_ratio"], "omega_ratio", "omega_ratio values must be finite and > 0");
        }
      }
    } else {
      c.omega_ratio = {1.0};
    }
  } else {
    forbid("atoms");
    forbid("photon_cutoff");
    if (doc["omega_ratio"]) {
      const auto w = r.real_grid(doc["omega_ratio"], "omega_ratio");
      if (w != std::vector<double>{1.0}) {
        r.fail(doc["omega_ratio"], "omega_ratio", "thermo-sweep covers the resonant case only (omega_ratio 1)");
      }
    }
    c.omega_ratio = {1.0};
    if (doc["g_over_gc"] && doc["distances"]) {
      r.fail(doc["distances"], "distances", "give either 'g_over_gc' or 'distances', not both");
    }
    if (doc["distances"]) {
      c.distances = r.real_grid(doc["distances"], "distances");
      require_nonempty(r, doc["distances"], "distances", c.distances);
      for (double d : c.distances) {
        if (!(d > 0.0 && d <= 1.0)) r.fail(doc["distances"], "distances", "distances must lie in (0, 1]");
      }
    } else {
      const YAML::Node g = require("g_over_gc");
      c.g_over_gc = r.real_grid(g, "g_over_gc");
      require_nonempty(r, g, "g_over_gc", c.g_over_gc);
      for (double v : c.g_over_gc) {
        if (!(v >= 0.0 && v < 1.0)) r.fail(g, "g_over_gc", "thermo-sweep needs 0 <= g_over_gc < 1");
      }
    }
  }

  if (const YAML::Node conv = doc["convergence"]) {
    if (c.kind != ExperimentKind::kConvergence) forbid("convergence");
    r.check_keys(conv, kConvergenceKeys, "convergence");
  }
  if (c.kind == ExperimentKind::kConvergence) {
    const YAML::Node conv = require("convergence");
    if (!conv["cutoffs"]) throw ConfigError("experiment 'convergence' requires 'convergence.cutoffs'", 0);
    c.convergence_cutoffs = r.integer_grid(conv["cutoffs"], "convergence.cutoffs");
    if (c.convergence_cutoffs.size() < 2 ||
        !std::is_sorted(c.convergence_cutoffs.begin(), c.convergence_cutoffs.end(), std::less_equal<>())) {
      r.fail(conv["cutoffs"], "convergence.cutoffs", "'convergence.cutoffs' needs at least two increasing values");
    }
    const int max_photons = *std::max_element(c.photons.begin(), c.photons.end());
    if (c.convergence_cutoffs.front() < max_photons) {
      r.fail(conv["cutoffs"], "convergence.cutoffs", "every cutoff must cover the requested photon numbers");
    }
  }

  if (const YAML::Node w = doc["wigner"]) {
    if (c.kind != ExperimentKind::kWigner) forbid("wigner");
    r.check_keys(w, kWignerKeys, "wigner");
    if (w["theta_max"]) c.wigner.theta_max = r.scalar<double>(w["theta_max"], "wigner.theta_max");
    if (w["theta_points"]) c.wigner.theta_points = r.scalar<int>(w["theta_points"], "wigner.theta_points");
    if (w["phi_points"]) c.wigner.phi_points = r.scalar<int>(w["phi_points"], "wigner.phi_points");
    if (w["include_unheralded"]) {
      c.wigner.include_unheralded = r.scalar<bool>(w["include_unheralded"], "wigner.include_unheralded");
    }
    if (!(c.wigner.theta_max > 0.0 && c.wigner.theta_max <= std::numbers::pi)) {
      r.fail(w, "wigner.theta_max", "'wigner.theta_max' must lie in (0, pi]");
    }
    if (c.wigner.theta_points < 2 || c.wigner.phi_points < 2) {
      r.fail(w, "wigner", "wigner patches need at least 2 points per axis");
    }
  }

  if (const YAML::Node s = doc["solver"]) {
    r.check_keys(s, kSolverKeys, "solver");
    if (s["tolerance"]) c.solver.tolerance = r.scalar<double>(s["tolerance"], "solver.tolerance");
    if (s["max_iterations"]) c.solver.max_iterations = r.scalar<int>(s["max_iterations"], "solver.max_iterations");
    if (!(c.solver.tolerance > 0.0 && c.solver.tolerance < 1.0)) {
      r.fail(s, "solver.tolerance", "'solver.tolerance' must lie in (0, 1)");
    }
    if (c.solver.max_iterations < 1) r.fail(s, "solver.max_iterations", "'solver.max_iterations' must be positive");
  }

  c.output_dir = doc["output_dir"] ? std::filesystem::path(r.scalar<std::string>(doc["output_dir"], "output_dir"))
                                   : std::filesystem::path("dickecat-out") / c.name;
  c.cache_dir = doc["cache_dir"] ? std::filesystem::path(r.scalar<std::string>(doc["cache_dir"], "cache_dir"))
                                 : default_cache_dir();
  if (doc["cache"]) c.use_cache = r.scalar<bool>(doc["cache"], "cache");
  if (doc["workers"]) {
    c.workers = r.scalar<int>(doc["workers"], "workers");
    if (c.workers < 1) r.fail(doc["workers"], "workers", "'workers' must be at least 1");
  }

  YAML::Emitter echo;
  echo << doc;
  c.source = echo.c_str();
  return c;
}

SweepConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path.string() + "'", 0);
  std::stringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides);
}

void apply_environment(SweepConfig& config) {
  if (const char* dir = std::getenv("DICKECAT_OUTPUT_DIR"); dir && *dir) config.output_dir = dir;
  if (const char* dir = std::getenv("DICKECAT_CACHE_DIR"); dir && *dir) config.cache_dir = dir;
  if (const char* workers = std::getenv("DICKECAT_WORKERS"); workers && *workers) {
    char* end = nullptr;
    const long value = std::strtol(workers, &end, 10);
    if (*end != '\0' || value < 1 || value > 1024) {
      throw ConfigError("DICKECAT_WORKERS must be an integer in [1, 1024], got '" + std::string(workers) + "'", 0);
    }
    config.workers = static_cast<int>(value);
  }
}

std::filesystem::path default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "dickecat";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "dickecat";
  }
  return std::filesystem::temp_directory_path() / "dickecat-cache";
}

}  // namespace dickecat::app

#include "cache.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dickecat/errors.hpp"
#include "dickecat/serialize.hpp"

namespace dickecat::app {
namespace {

constexpr std::string_view kSuffix = ".ground_state.json";

std::string exact(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace

std::string CacheKey::canonical() const {
  std::ostringstream s;
  s << kGroundStateFormat << ";atoms=" << atoms << ";g_over_gc=" << exact(g_over_gc)
    << ";omega_ratio=" << exact(omega_ratio) << ";photon_cutoff=" << photon_cutoff
    << ";tolerance=" << exact(tolerance) << ";max_iterations=" << max_iterations;
  return s.str();
}

std::string CacheKey::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

GroundStateCache::GroundStateCache(std::filesystem::path directory, std::ostream& warnings)
    : directory_(std::move(directory)), warnings_(&warnings) {}

std::filesystem::path GroundStateCache::file_for(const CacheKey& key) const {
  return directory_ / (key.digest() + std::string(kSuffix));
}

std::optional<GroundState> GroundStateCache::lookup(const CacheKey& key) {
  const std::lock_guard lock(mutex_);
  const auto path = file_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    GroundState g = read_ground_state(in);
    const DickeParams expected = DickeParams::at_ratio(key.atoms, key.g_over_gc, key.omega_ratio, key.photon_cutoff);
    const DickeParams& p = g.basis.params();
    if (p.atoms != expected.atoms || p.photon_cutoff != expected.photon_cutoff ||
        p.coupling != expected.coupling || p.omega_atom != expected.omega_atom ||
        p.omega_cav != expected.omega_cav) {
      throw FormatError("parameters do not match the cache key");
    }
    return g;
  } catch (const FormatError& e) {
    *warnings_ << "warning: ignoring corrupt cache entry " << path.string() << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

void GroundStateCache::store(const CacheKey& key, const GroundState& ground) {
  const std::lock_guard lock(mutex_);
  std::filesystem::create_directories(directory_);
  const auto path = file_for(key);
  // Write-then-rename so a concurrent reader never sees a partial file.
  const auto staging = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(staging, std::ios::trunc);
    if (!out) {
      *warnings_ << "warning: cannot write cache entry " << staging.string() << "\n";
      return;
    }
    write_ground_state(out, ground);
  }
  std::filesystem::rename(staging, path);
}

std::vector<CacheEntry> GroundStateCache::entries() const {
  const std::lock_guard lock(mutex_);
  std::vector<CacheEntry> out;
  if (!std::filesystem::is_directory(directory_)) return out;
  for (const auto& item : std::filesystem::directory_iterator(directory_)) {
    const std::string name = item.path().filename().string();
    if (item.is_regular_file() && name.ends_with(kSuffix)) out.push_back({item.path(), item.file_size()});
  }
  std::sort(out.begin(), out.end(), [](const CacheEntry& a, const CacheEntry& b) { return a.path < b.path; });
  return out;
}

std::size_t GroundStateCache::clear() {
  std::size_t removed = 0;
  for (const auto& entry : entries()) {
    const std::lock_guard lock(mutex_);
    if (std::filesystem::remove(entry.path)) ++removed;
  }
  return removed;
}

}  // namespace dickecat::app

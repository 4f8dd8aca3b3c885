#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dickecat/dicke.hpp"

namespace dickecat::app {

/// Everything a cached ground state depends on.
struct CacheKey {
  int atoms = 1;
  double g_over_gc = 0.0;
  double omega_ratio = 1.0;
  int photon_cutoff = 50;
  double tolerance = 1e-10;
  int max_iterations = 5000;

  /// Canonical text hashed into the file name; includes the format tag.
  std::string canonical() const;
  /// 16 hex digits of FNV-1a over canonical().
  std::string digest() const;
};

struct CacheEntry {
  std::filesystem::path path;
  std::uintmax_t bytes = 0;
};

/// Directory of JSON ground-state artifacts. Lookups and stores are serialized;
/// a file that fails to parse or does not match its key is reported on `warnings`
/// and treated as a miss.
class GroundStateCache {
 public:
  GroundStateCache(std::filesystem::path directory, std::ostream& warnings);

  std::optional<GroundState> lookup(const CacheKey& key);
  void store(const CacheKey& key, const GroundState& ground);

  const std::filesystem::path& directory() const noexcept { return directory_; }
  std::vector<CacheEntry> entries() const;
  /// Removes every cache file; returns how many were removed.
  std::size_t clear();

 private:
  std::filesystem::path file_for(const CacheKey& key) const;

  std::filesystem::path directory_;
  std::ostream* warnings_;
  mutable std::mutex mutex_;
};

}  // namespace dickecat::app

#pragma once

#include <span>
#include <string_view>

namespace dickecat::app {

struct Preset {
  std::string_view name;
  std::string_view text;
};

/// Configurations shipped with the tool, sorted by name.
std::span<const Preset> presets();
const Preset* find_preset(std::string_view name);

}  // namespace dickecat::app

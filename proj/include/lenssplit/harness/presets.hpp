#pragma once

#include <string>
#include <vector>

#include "lenssplit/harness/config.hpp"

namespace lenssplit::harness {

struct Preset {
  std::string name;
  std::string command;  ///< subcommand the preset is meant for
  std::string summary;
  std::string text;     ///< configuration text
};

const std::vector<Preset>& presets();

/// Parsed configuration of a named preset; throws ConfigError if unknown.
Config preset_config(const std::string& name);

}  // namespace lenssplit::harness

#pragma once

#include "stackmc/config.hpp"

#include <string>
#include <vector>

namespace stackmc {

// Names accepted by preset(), in display order.
const std::vector<std::string>& preset_names();

// One-line description of a preset.
std::string preset_description(const std::string& name);

// Desk-scale experiment configuration. Throws ConfigError for unknown names,
// listing the valid ones.
ExperimentConfig preset(const std::string& name);

}  // namespace stackmc

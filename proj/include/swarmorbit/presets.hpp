#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swarmorbit {

// Scenario presets shipped with the library (the YAML files under presets/).
std::vector<std::string> preset_names();
std::optional<std::string_view> preset_text(std::string_view name);

}  // namespace swarmorbit

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "swarmorbit/scenario.hpp"

namespace swarmorbit {

// Parses a YAML scenario document (sections: name, path, gains, safety,
// monitor, robots, launch, run) and validates it. Unknown keys and type
// errors raise ParseError carrying the 1-based line/column of the offending
// node; constraint violations raise ValidationError naming the field.
Scenario parse_scenario(std::string_view text);

// Same, after applying `key.path=value` overrides (dotted keys, numeric
// components index sequences, values are YAML scalars or flow collections).
Scenario parse_scenario(std::string_view text, const std::vector<std::string>& overrides);

// Canonical YAML for a scenario; parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& sc);

Scenario load_scenario_file(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace swarmorbit

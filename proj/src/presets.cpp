#include "swarmorbit/presets.hpp"

#include <utility>

namespace swarmorbit {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& preset_table();
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : detail::preset_table()) names.emplace_back(name);
    return names;
}

std::optional<std::string_view> preset_text(std::string_view name) {
    for (const auto& [n, text] : detail::preset_table())
        if (n == name) return text;
    return std::nullopt;
}

}  // namespace swarmorbit

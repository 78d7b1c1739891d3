#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace uxlens {

std::string trim(std::string_view s);

// "1. first\n2. second\n..." — the list shape used inside summary prompts.
std::string numbered_list(const std::vector<std::string>& items);

} // namespace uxlens

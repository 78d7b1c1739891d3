#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

namespace uxlens {

// Locates the first syntactically balanced JSON value ('{...}' or '[...]')
// inside model output that may be wrapped in prose or code fences, and parses
// it. Candidate start positions that never balance are skipped; the first
// balanced region wins. Throws NoJsonFoundError when no balanced region
// exists and MalformedJsonError when the balanced region fails to parse.
nlohmann::json extract_json(std::string_view model_text);

} // namespace uxlens

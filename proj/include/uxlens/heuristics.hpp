#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "uxlens/types.hpp"

namespace uxlens {

// The built-in catalog of Nielsen's ten heuristics with one guiding
// question each, sorted by ordinal.
const std::vector<Heuristic>& default_heuristics();

// Returns the default catalog.
std::vector<Heuristic> load_heuristic_catalog();

// Loads a catalog from an override document: a JSON array of exactly ten
// {"id", "name", "guiding_question"} objects. Throws OverrideInvalidError on
// wrong count, duplicate or out-of-range ids, or empty texts.
std::vector<Heuristic> load_heuristic_catalog(const nlohmann::json& override_doc);

// Same, reading the override document from a file.
std::vector<Heuristic> load_heuristic_catalog(const std::filesystem::path& override_file);

} // namespace uxlens

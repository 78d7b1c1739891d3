#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uxlens/types.hpp"

namespace uxlens {

// Canonical serialization: fixed key order, UTF-8, 2-space indent,
// newline-terminated. Equal reports produce byte-equal output. Heuristics
// are emitted as names looked up in `catalog`, in ordinal order.
std::string render_json(const EvaluationReport& report, const std::vector<Heuristic>& catalog);

// Sections ordered by rank; each shows rank, summary, recommendation, and
// violated heuristic names. top_k truncates and notes how many issues were
// omitted.
std::string render_markdown(const EvaluationReport& report, const std::vector<Heuristic>& catalog,
                            std::optional<int> top_k = std::nullopt);

} // namespace uxlens

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uxlens/aggregate.hpp"
#include "uxlens/evaluate.hpp"
#include "uxlens/provider.hpp"
#include "uxlens/types.hpp"

namespace uxlens {

struct ReportOptions {
    std::optional<int> top_k;
    std::vector<std::string> formats = {"json", "markdown"};
};

struct RunConfig {
    AppProfile app;
    std::vector<TaskScenario> scenarios;
    ProviderConfig provider;
    AggregateOptions aggregation;
    EvalOptions evaluation;
    ReportOptions report;
    std::optional<std::filesystem::path> templates_dir;
    std::optional<std::filesystem::path> heuristics_override;
    std::filesystem::path cache_dir;
    std::filesystem::path base_dir; // directory of the config file
};

// Parses, defaults, and validates a JSON run configuration. Relative paths
// resolve against the config file's directory; recordings must exist and be
// readable; duplicate scenario ids are rejected.
RunConfig load_config(const std::filesystem::path& config_path);

} // namespace uxlens

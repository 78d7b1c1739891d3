#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uxlens/aggregate.hpp"
#include "uxlens/config.hpp"
#include "uxlens/provider.hpp"
#include "uxlens/rank.hpp"

namespace uxlens {

enum class Stage { evaluate, aggregate, rank, report };

Stage parse_stage(const std::string& name); // throws ConfigError on unknown name
std::string stage_name(Stage stage);

struct PipelineOptions {
    Mode mode = Mode::replay;
    std::optional<double> threshold; // overrides aggregation.similarity_threshold
    std::optional<int> top_k;        // overrides report.top_k
    int jobs = 1;                    // scenario-level parallelism
    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> templates_dir; // overrides config
    Stage first_stage = Stage::evaluate;
    Stage last_stage = Stage::report;
};

struct ScenarioResult {
    std::string scenario_id;
    bool ok = false;
    std::string failed_stage; // empty when ok
    std::string error;        // empty when ok
};

// Per-scenario artifact paths under out_dir/<scenario id>/.
std::filesystem::path raw_issues_path(const PipelineOptions&, const TaskScenario&);
std::filesystem::path aggregated_path(const PipelineOptions&, const TaskScenario&);
std::filesystem::path ranked_path(const PipelineOptions&, const TaskScenario&);
std::filesystem::path report_json_path(const PipelineOptions&, const TaskScenario&);
std::filesystem::path report_markdown_path(const PipelineOptions&, const TaskScenario&);

// Runs stages first_stage..last_stage for every scenario. Each stage reads
// the previous stage's artifact and writes its own, so stage-wise runs and
// full runs produce identical bytes. Failures are reported per scenario;
// other scenarios still complete. Catalog and template problems throw
// (misconfiguration halts the whole run).
std::vector<ScenarioResult> run_pipeline(const RunConfig& config, const PipelineOptions& options,
                                         Client& client);

// ISO-8601 UTC provenance timestamp: SOURCE_DATE_EPOCH when set, a fixed
// epoch in replay mode (reports must be byte-stable), wall clock otherwise.
std::string provenance_timestamp(Mode mode);

} // namespace uxlens

#pragma once

#include <cstdint>
#include <vector>

#include "uxlens/provider.hpp"
#include "uxlens/templates.hpp"
#include "uxlens/types.hpp"

namespace uxlens {

struct EvalOptions {
    int parallelism = 4;
    std::int64_t context_limit = 1048576;
    std::int64_t text_reserve = 4096;
};

// The per-heuristic inspection request: evaluation system + user prompt with
// the scenario recording attached. Shared with the fixture generator so
// recorded cache keys always match what the pipeline sends.
ChatRequest build_evaluation_request(const AppProfile& app, const TaskScenario& scenario,
                                     const Heuristic& heuristic, const TemplateSet& templates);

// One chat call with the scenario recording attached, inspecting a single
// heuristic. Parsed issues are tagged with the heuristic and scenario; an
// empty list is a valid result. A malformed response gets one corrective
// re-send before SchemaError. Issues whose description or recommendation is
// blank after trimming are dropped with a warning.
std::vector<RawIssue> evaluate_heuristic(const AppProfile& app, const TaskScenario& scenario,
                                         const Heuristic& heuristic, const TemplateSet& templates,
                                         ModelSession& session, const EvalOptions& options);

// Runs evaluate_heuristic once per catalog entry (10 calls), up to
// options.parallelism at a time. Output is sorted by (heuristic ordinal,
// in-response index) so it is identical for any parallelism setting. The
// failure with the smallest heuristic ordinal aborts the scenario.
std::vector<RawIssue> evaluate_scenario(const AppProfile& app, const TaskScenario& scenario,
                                        const std::vector<Heuristic>& catalog,
                                        const TemplateSet& templates, ModelSession& session,
                                        const EvalOptions& options);

} // namespace uxlens

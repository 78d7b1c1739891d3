#pragma once

#include <string>
#include <vector>

#include "uxlens/provider.hpp"
#include "uxlens/templates.hpp"
#include "uxlens/types.hpp"

namespace uxlens {

// How the final order of a report came to be.
//   model             - model order accepted as-is
//   model-repaired    - model order fixed up to a valid permutation
//   single            - one issue, order forced without a chat call
//   unranked-fallback - model output unusable after the corrective re-send;
//                       aggregation order preserved
struct RankOutcome {
    std::vector<RankedIssue> ranked;
    std::string ranking_mode;
};

// The severity-ranking request: issues presented with 0-based indices.
// Shared with the fixture generator.
ChatRequest build_ranking_request(const AppProfile& app, const TaskScenario& scenario,
                                  const std::vector<AggregatedIssue>& issues,
                                  const TemplateSet& templates);

// One chat call presenting the issues with 0-based indices; the parsed
// order is validated as a permutation (repaired when possible) and rank
// i+1 goes to the issue at order[i]. N=1 short-circuits with no call.
RankOutcome rank_scenario(const AppProfile& app, const TaskScenario& scenario,
                          const std::vector<AggregatedIssue>& issues,
                          const TemplateSet& templates, ModelSession& session);

} // namespace uxlens

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "uxlens/provider.hpp"
#include "uxlens/similarity.hpp"
#include "uxlens/templates.hpp"
#include "uxlens/types.hpp"

namespace uxlens {

// A connected component of similar issues within one scenario.
// member_indices point into the raw-issue list the group was built from;
// pair_similarities holds the within-group pairwise cosines (diagnostic).
struct SimilarityGroup {
    std::vector<RawIssue> members;
    std::vector<std::size_t> member_indices;
    std::map<std::pair<std::size_t, std::size_t>, double> pair_similarities;
};

struct AggregateOptions {
    double similarity_threshold = 0.7;
    // Off by default: only issue descriptions feed grouping.
    bool embed_recommendations = false;
};

// Partition of the issues into connected components of the graph whose
// edges are vector pairs with cosine >= threshold. Groups are ordered by
// smallest member index; members keep their input order.
std::vector<SimilarityGroup> build_groups(const std::vector<RawIssue>& issues,
                                          const std::vector<EmbeddingVector>& vectors,
                                          double threshold);

// Summarization requests for a multi-member group; shared with the fixture
// generator.
ChatRequest build_issue_summary_request(const std::vector<std::string>& descriptions,
                                        const TemplateSet& templates);
ChatRequest build_recommendation_summary_request(const std::vector<std::string>& recommendations,
                                                 const TemplateSet& templates);

// Singleton groups pass through verbatim with no chat call; multi-member
// groups trigger two summarization calls (issue summary, recommendation
// summary), each with one corrective re-send before SchemaError.
AggregatedIssue summarize_group(const SimilarityGroup& group, const TemplateSet& templates,
                                ModelSession& session);

// Embeds all issue descriptions in one call, groups them, and summarizes
// each group. The union of members across the output equals the input set.
std::vector<AggregatedIssue> aggregate_scenario(const std::vector<RawIssue>& issues,
                                                const TemplateSet& templates,
                                                ModelSession& session,
                                                const AggregateOptions& options);

// Same, also returning the groups for the stage artifact.
struct AggregationOutcome {
    std::vector<SimilarityGroup> groups;
    std::vector<AggregatedIssue> issues;
};
AggregationOutcome aggregate_scenario_detailed(const std::vector<RawIssue>& issues,
                                               const TemplateSet& templates,
                                               ModelSession& session,
                                               const AggregateOptions& options);

} // namespace uxlens

#include "uxlens/aggregate.hpp"

#include <nlohmann/json.hpp>

#include "uxlens/errors.hpp"
#include "uxlens/json_extract.hpp"
#include "uxlens/text.hpp"

namespace uxlens {

namespace {

constexpr const char* kRepairInstruction =
    "\n\nRespond with only the JSON object in the requested schema.";

void require_single_scenario(const std::vector<RawIssue>& issues) {
    for (const auto& issue : issues)
        if (issue.scenario_id != issues.front().scenario_id)
            throw PreconditionError("aggregation input mixes scenarios: " +
                                    issues.front().scenario_id + " and " + issue.scenario_id);
}

// Extracts a non-empty string field from the model output, with one
// corrective re-send. Used for both summary prompts.
std::string summarize_text(ModelSession& session, const ChatRequest& request,
                           const char* field) {
    auto parse = [&](const std::string& text) {
        const nlohmann::json doc = extract_json(text);
        if (!doc.is_object() || !doc.contains(field) || !doc[field].is_string())
            throw SchemaError(std::string("summary response lacks a \"") + field +
                              "\" string field");
        const std::string value = trim(doc[field].get<std::string>());
        if (value.empty()) throw SchemaError(std::string("summary field \"") + field + "\" is blank");
        return value;
    };

    const ChatResponse response = session.chat(request);
    try {
        return parse(response.text);
    } catch (const Error&) {
        ChatRequest repair = request;
        repair.user_prompt += kRepairInstruction;
        const ChatResponse second = session.chat(repair);
        try {
            return parse(second.text);
        } catch (const Error& e) {
            throw SchemaError(std::string("unusable ") + field +
                              " output after repair: " + e.what());
        }
    }
}

} // namespace

ChatRequest build_issue_summary_request(const std::vector<std::string>& descriptions,
                                        const TemplateSet& templates) {
    ChatRequest request;
    request.user_prompt = templates.render(
        TemplateId::issue_summary, {{"issue_descriptions", numbered_list(descriptions)}});
    return request;
}

ChatRequest build_recommendation_summary_request(const std::vector<std::string>& recommendations,
                                                 const TemplateSet& templates) {
    ChatRequest request;
    request.user_prompt = templates.render(TemplateId::recommendation_summary,
                                           {{"recommendations", numbered_list(recommendations)}});
    return request;
}

std::vector<SimilarityGroup> build_groups(const std::vector<RawIssue>& issues,
                                          const std::vector<EmbeddingVector>& vectors,
                                          double threshold) {
    if (issues.size() != vectors.size())
        throw AlignmentError("issue/vector count mismatch: " + std::to_string(issues.size()) +
                             " vs " + std::to_string(vectors.size()));
    if (issues.empty()) return {};
    require_single_scenario(issues);

    std::vector<SimilarityGroup> groups;
    for (auto& index_group : group_indices_by_similarity(vectors, threshold)) {
        SimilarityGroup group;
        group.member_indices = std::move(index_group.members);
        group.pair_similarities = std::move(index_group.pair_similarities);
        for (const std::size_t i : group.member_indices) group.members.push_back(issues[i]);
        groups.push_back(std::move(group));
    }
    return groups;
}

AggregatedIssue summarize_group(const SimilarityGroup& group, const TemplateSet& templates,
                                ModelSession& session) {
    if (group.members.empty()) throw PreconditionError("cannot summarize an empty group");

    AggregatedIssue out;
    out.scenario_id = group.members.front().scenario_id;
    out.members = group.members;

    if (group.members.size() == 1) {
        out.summary = group.members.front().description;
        out.recommendation_summary = group.members.front().recommendation;
        return out;
    }

    std::vector<std::string> descriptions, recommendations;
    for (const auto& member : group.members) {
        descriptions.push_back(member.description);
        recommendations.push_back(member.recommendation);
    }

    out.summary = summarize_text(session, build_issue_summary_request(descriptions, templates),
                                 "summary");
    out.recommendation_summary = summarize_text(
        session, build_recommendation_summary_request(recommendations, templates),
        "recommendation");
    return out;
}

std::vector<AggregatedIssue> aggregate_scenario(const std::vector<RawIssue>& issues,
                                                const TemplateSet& templates,
                                                ModelSession& session,
                                                const AggregateOptions& options) {
    return aggregate_scenario_detailed(issues, templates, session, options).issues;
}

AggregationOutcome aggregate_scenario_detailed(const std::vector<RawIssue>& issues,
                                               const TemplateSet& templates,
                                               ModelSession& session,
                                               const AggregateOptions& options) {
    AggregationOutcome outcome;
    if (issues.empty()) return outcome; // no embed call for an empty scenario
    require_single_scenario(issues);

    std::vector<std::string> texts;
    texts.reserve(issues.size());
    for (const auto& issue : issues) {
        texts.push_back(options.embed_recommendations
                            ? issue.description + "\n" + issue.recommendation
                            : issue.description);
    }

    const std::vector<EmbeddingVector> vectors = session.embed(texts);
    outcome.groups = build_groups(issues, vectors, options.similarity_threshold);
    for (const auto& group : outcome.groups)
        outcome.issues.push_back(summarize_group(group, templates, session));
    return outcome;
}

} // namespace uxlens

#include "uxlens/rank.hpp"

#include <nlohmann/json.hpp>

#include "uxlens/errors.hpp"
#include "uxlens/json_extract.hpp"
#include "uxlens/order.hpp"
#include "uxlens/text.hpp"

namespace uxlens {

namespace {

constexpr const char* kRepairInstruction =
    "\n\nRespond with only the JSON object in the requested schema.";

std::string heuristic_ordinals(const AggregatedIssue& issue) {
    std::string out;
    for (const auto& id : issue.violated_heuristics()) {
        if (!out.empty()) out += ", ";
        out += std::to_string(id.ordinal());
    }
    return out;
}

std::string issues_block(const std::vector<AggregatedIssue>& issues) {
    std::string out;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i > 0) out += "\n\n";
        out += "Issue " + std::to_string(i) + ":\n";
        out += "Description: " + issues[i].summary + "\n";
        out += "Recommendation: " + issues[i].recommendation_summary + "\n";
        out += "Violated heuristics: " + heuristic_ordinals(issues[i]);
    }
    return out;
}

struct ParsedRanking {
    OrderVerdict verdict;
    std::vector<std::optional<std::string>> rationales; // by presented index
};

// Pulls "order" (and optional "rationales") out of the model output.
// Throws on missing/unparsable JSON; an unrepairable order is reported via
// the verdict instead so the caller can distinguish the two repair paths.
ParsedRanking parse_ranking(const std::string& text, int n) {
    const nlohmann::json doc = extract_json(text);
    ParsedRanking parsed;
    parsed.rationales.resize(static_cast<std::size_t>(n));

    const nlohmann::json order_field =
        doc.is_object() && doc.contains("order") ? doc["order"] : nlohmann::json();
    parsed.verdict = validate_order(order_field, n);

    if (doc.is_object() && doc.contains("rationales")) {
        const auto& field = doc["rationales"];
        if (field.is_array()) {
            // Aligned with the order array: entry k explains the issue
            // placed at rank k+1.
            for (std::size_t k = 0; k < field.size() && k < parsed.verdict.order.size(); ++k) {
                if (field[k].is_string())
                    parsed.rationales[static_cast<std::size_t>(parsed.verdict.order[k])] =
                        field[k].get<std::string>();
            }
        } else if (field.is_object()) {
            // Keyed by presented index.
            for (const auto& [key, value] : field.items()) {
                if (!value.is_string()) continue;
                try {
                    const int idx = std::stoi(key);
                    if (idx >= 0 && idx < n)
                        parsed.rationales[static_cast<std::size_t>(idx)] =
                            value.get<std::string>();
                } catch (const std::exception&) {
                    // non-numeric key, skip
                }
            }
        }
    }
    return parsed;
}

std::vector<RankedIssue> apply_order(const std::vector<AggregatedIssue>& issues,
                                     const std::vector<int>& order,
                                     const std::vector<std::optional<std::string>>& rationales) {
    std::vector<RankedIssue> ranked;
    ranked.reserve(issues.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto idx = static_cast<std::size_t>(order[pos]);
        ranked.push_back({static_cast<int>(pos) + 1, issues[idx], rationales[idx]});
    }
    return ranked;
}

std::vector<int> identity_order(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    return order;
}

} // namespace

ChatRequest build_ranking_request(const AppProfile& app, const TaskScenario& scenario,
                                  const std::vector<AggregatedIssue>& issues,
                                  const TemplateSet& templates) {
    ChatRequest request;
    request.system_prompt = templates.render(TemplateId::rank_system, {});
    request.user_prompt = templates.render(TemplateId::rank_user,
                                           {{"app_description", app.description},
                                            {"persona", scenario.persona},
                                            {"task", scenario.task_instruction},
                                            {"issues", issues_block(issues)}});
    return request;
}

RankOutcome rank_scenario(const AppProfile& app, const TaskScenario& scenario,
                          const std::vector<AggregatedIssue>& issues,
                          const TemplateSet& templates, ModelSession& session) {
    if (issues.empty()) throw PreconditionError("rank_scenario requires a non-empty issue list");
    for (const auto& issue : issues)
        if (issue.scenario_id != scenario.id)
            throw PreconditionError("ranking input from a different scenario: " +
                                    issue.scenario_id);

    const int n = static_cast<int>(issues.size());
    if (n == 1) {
        return {{{1, issues.front(), std::nullopt}}, "single"};
    }

    const ChatRequest request = build_ranking_request(app, scenario, issues, templates);

    auto attempt = [&](const ChatRequest& r) -> std::optional<ParsedRanking> {
        const ChatResponse response = session.chat(r);
        try {
            ParsedRanking parsed = parse_ranking(response.text, n);
            if (parsed.verdict.kind == OrderVerdictKind::unrepairable) return std::nullopt;
            return parsed;
        } catch (const NoJsonFoundError&) {
            return std::nullopt;
        } catch (const MalformedJsonError&) {
            return std::nullopt;
        }
    };

    std::optional<ParsedRanking> parsed = attempt(request);
    if (!parsed) {
        ChatRequest repair = request;
        repair.user_prompt += kRepairInstruction;
        parsed = attempt(repair);
    }
    if (!parsed) {
        // Deterministic fallback: aggregation order, flagged in provenance.
        std::vector<std::optional<std::string>> none(static_cast<std::size_t>(n));
        return {apply_order(issues, identity_order(n), none), "unranked-fallback"};
    }

    const char* mode =
        parsed->verdict.kind == OrderVerdictKind::valid ? "model" : "model-repaired";
    return {apply_order(issues, parsed->verdict.order, parsed->rationales), mode};
}

} // namespace uxlens

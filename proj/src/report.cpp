#include "uxlens/report.hpp"

#include <nlohmann/json.hpp>

#include "uxlens/errors.hpp"

namespace uxlens {

namespace {

std::string name_of(const HeuristicId& id, const std::vector<Heuristic>& catalog) {
    for (const auto& heuristic : catalog)
        if (heuristic.id == id) return heuristic.name;
    throw Error("heuristic " + std::to_string(id.ordinal()) + " not in catalog");
}

std::vector<std::string> heuristic_names(const AggregatedIssue& issue,
                                         const std::vector<Heuristic>& catalog) {
    std::vector<std::string> names;
    for (const auto& id : issue.violated_heuristics()) // set is ordered by ordinal
        names.push_back(name_of(id, catalog));
    return names;
}

} // namespace

std::string render_json(const EvaluationReport& report, const std::vector<Heuristic>& catalog) {
    nlohmann::ordered_json doc;
    doc["app"] = {{"name", report.app.name}, {"description", report.app.description}};
    doc["scenario"] = {
        {"id", report.scenario.id},
        {"persona", report.scenario.persona},
        {"task_instruction", report.scenario.task_instruction},
        {"recording",
         {{"path", report.scenario.recording.configured_path.empty()
                       ? report.scenario.recording.path.string()
                       : report.scenario.recording.configured_path},
          {"duration_seconds", report.scenario.recording.duration_seconds}}},
    };
    doc["provenance"] = {
        {"chat_model", report.provenance.chat_model},
        {"embedding_model", report.provenance.embedding_model},
        {"similarity_threshold", report.provenance.similarity_threshold},
        {"pipeline_version", report.provenance.pipeline_version},
        {"created_at", report.provenance.created_at},
        {"ranking_mode", report.provenance.ranking_mode},
    };
    doc["issues"] = nlohmann::ordered_json::array();
    for (const auto& ranked : report.ranked) {
        nlohmann::ordered_json issue;
        issue["rank"] = ranked.rank;
        issue["summary"] = ranked.issue.summary;
        issue["recommendation"] = ranked.issue.recommendation_summary;
        issue["violated_heuristics"] = heuristic_names(ranked.issue, catalog);
        issue["member_count"] = ranked.issue.member_count();
        doc["issues"].push_back(std::move(issue));
    }
    return doc.dump(2) + "\n";
}

std::string render_markdown(const EvaluationReport& report, const std::vector<Heuristic>& catalog,
                            std::optional<int> top_k) {
    std::string out;
    out += "# Usability Evaluation Report\n\n";
    out += "- **Application:** " + report.app.name + "\n";
    out += "- **Scenario:** " + report.scenario.id + "\n";
    out += "- **Persona:** " + report.scenario.persona + "\n";
    out += "- **Task:** " + report.scenario.task_instruction + "\n\n";

    if (report.ranked.empty()) {
        out += "No usability issues identified.\n";
        return out;
    }

    const std::size_t total = report.ranked.size();
    const std::size_t shown = top_k ? std::min<std::size_t>(static_cast<std::size_t>(*top_k), total)
                                    : total;

    for (std::size_t i = 0; i < shown; ++i) {
        const RankedIssue& ranked = report.ranked[i];
        out += "## " + std::to_string(ranked.rank) + ". " + ranked.issue.summary + "\n\n";
        out += "**Recommendation:** " + ranked.issue.recommendation_summary + "\n\n";
        out += "**Violated heuristics:** ";
        const auto names = heuristic_names(ranked.issue, catalog);
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (k > 0) out += ", ";
            out += names[k];
        }
        out += "\n\n";
    }

    if (shown < total) {
        out += "_" + std::to_string(total - shown) + " further issue" +
               (total - shown == 1 ? "" : "s") + " omitted._\n";
    }
    return out;
}

} // namespace uxlens

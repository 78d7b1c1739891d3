#pragma once

#include <compare>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uxlens/errors.hpp"

namespace uxlens {

// One of Nielsen's ten inspection lenses, identified by its ordinal.
class HeuristicId {
public:
    static constexpr int kCount = 10;

    explicit HeuristicId(int ordinal) : ordinal_(ordinal) {
        if (ordinal < 1 || ordinal > kCount)
            throw Error("heuristic ordinal out of range: " + std::to_string(ordinal));
    }

    int ordinal() const { return ordinal_; }

    auto operator<=>(const HeuristicId&) const = default;

private:
    int ordinal_;
};

struct Heuristic {
    HeuristicId id;
    std::string name;
    std::string guiding_question;
};

struct AppProfile {
    std::string name;
    std::string description;
};

struct VideoRef {
    std::filesystem::path path; // resolved; used for reading and digesting
    std::string configured_path; // as written in the config; used in reports
    double duration_seconds = 0.0;
};

// Persona + task instruction + screen recording; the unit of evaluation.
struct TaskScenario {
    std::string id;
    std::string persona;
    std::string task_instruction;
    VideoRef recording;
};

// One issue found under one heuristic.
struct RawIssue {
    std::string scenario_id;
    HeuristicId heuristic;
    std::string description;
    std::string recommendation;
};

// Merged description/recommendation for a group of similar raw issues.
// violated_heuristics and member_count are derived from members so the
// attribution invariants hold by construction.
struct AggregatedIssue {
    std::string scenario_id;
    std::string summary;
    std::string recommendation_summary;
    std::vector<RawIssue> members;

    std::set<HeuristicId> violated_heuristics() const {
        std::set<HeuristicId> out;
        for (const auto& m : members) out.insert(m.heuristic);
        return out;
    }

    std::size_t member_count() const { return members.size(); }
};

struct RankedIssue {
    int rank = 0; // 1 = most severe
    AggregatedIssue issue;
    std::optional<std::string> rationale;
};

struct Provenance {
    std::string chat_model;
    std::string embedding_model;
    double similarity_threshold = 0.0;
    std::string pipeline_version;
    std::string created_at;
    std::string ranking_mode;
};

struct EvaluationReport {
    AppProfile app;
    TaskScenario scenario;
    std::vector<RankedIssue> ranked; // ascending by rank
    Provenance provenance;
};

} // namespace uxlens

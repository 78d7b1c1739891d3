#include "uxlens/heuristics.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "uxlens/errors.hpp"

namespace uxlens {

const std::vector<Heuristic>& default_heuristics() {
    static const std::vector<Heuristic> catalog = {
        {HeuristicId(1), "Visibility of System Status",
         "Does the interface keep users informed about what is happening through timely "
         "feedback (e.g., loading indicators, progress, confirmations)?"},
        {HeuristicId(2), "Match Between System and the Real World",
         "Does the interface speak the users' language and follow real-world conventions "
         "instead of system-oriented terms?"},
        {HeuristicId(3), "User Control and Freedom",
         "Can users easily undo or exit unwanted actions (e.g., cancel, back, undo)?"},
        {HeuristicId(4), "Consistency and Standards",
         "Are controls, terminology, and layouts consistent within the application and "
         "with platform conventions?"},
        {HeuristicId(5), "Error Prevention",
         "Does the design prevent problems before they occur (e.g., input constraints, "
         "confirmations, sensible defaults)?"},
        {HeuristicId(6), "Recognition Rather than Recall",
         "Are options, actions, and information visible or easily retrievable instead of "
         "requiring users to remember them?"},
        {HeuristicId(7), "Flexibility and Efficiency of Use",
         "Can both novice and expert users work efficiently (e.g., shortcuts, sensible "
         "defaults, personalization)?"},
        {HeuristicId(8), "Aesthetic and Minimalist Design",
         "Is the interface free of irrelevant or rarely needed information that competes "
         "with the relevant content?"},
        {HeuristicId(9), "Help Users Recognize, Diagnose, and Recover from Errors",
         "Are error messages expressed in plain language, precisely indicating the problem "
         "and constructively suggesting a solution?"},
        {HeuristicId(10), "Help and Documentation",
         "Is help and documentation easy to search and focused on the user's current task "
         "when needed?"},
    };
    return catalog;
}

std::vector<Heuristic> load_heuristic_catalog() {
    return default_heuristics();
}

std::vector<Heuristic> load_heuristic_catalog(const nlohmann::json& override_doc) {
    if (!override_doc.is_array())
        throw OverrideInvalidError("heuristic override must be a JSON array");
    if (override_doc.size() != HeuristicId::kCount)
        throw OverrideInvalidError("heuristic override must contain exactly 10 entries, got " +
                                   std::to_string(override_doc.size()));

    std::vector<Heuristic> catalog;
    std::set<int> seen;
    for (const auto& entry : override_doc) {
        if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_number_integer())
            throw OverrideInvalidError("heuristic override entry missing integer \"id\"");
        const int ordinal = entry["id"].get<int>();
        if (ordinal < 1 || ordinal > HeuristicId::kCount)
            throw OverrideInvalidError("heuristic id out of range: " + std::to_string(ordinal));
        if (!seen.insert(ordinal).second)
            throw OverrideInvalidError("duplicate heuristic id: " + std::to_string(ordinal));

        const std::string name = entry.value("name", std::string{});
        const std::string question = entry.value("guiding_question", std::string{});
        if (name.empty())
            throw OverrideInvalidError("heuristic " + std::to_string(ordinal) + " has empty name");
        if (question.empty())
            throw OverrideInvalidError("heuristic " + std::to_string(ordinal) +
                                       " has empty guiding_question");
        catalog.push_back({HeuristicId(ordinal), name, question});
    }

    std::sort(catalog.begin(), catalog.end(),
              [](const Heuristic& a, const Heuristic& b) { return a.id < b.id; });
    return catalog;
}

std::vector<Heuristic> load_heuristic_catalog(const std::filesystem::path& override_file) {
    std::ifstream in(override_file);
    if (!in)
        throw OverrideInvalidError("cannot open heuristic override file: " +
                                   override_file.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw OverrideInvalidError("heuristic override is not valid JSON: " +
                                   std::string(e.what()));
    }
    return load_heuristic_catalog(doc);
}

} // namespace uxlens

#include "uxlens/templates.hpp"

#include <fstream>
#include <sstream>

#include "uxlens/errors.hpp"

namespace uxlens {

namespace {

const char* kEvalSystem =
    "You are a usability expert conducting a heuristic inspection of an interactive "
    "application. You analyze screen recordings of users performing tasks and identify "
    "concrete usability issues. Base every finding on what is observable in the recording "
    "and the provided context, and keep descriptions precise and concise. Follow the "
    "requested output format exactly.";

const char* kEvalUser =
    "Application description:\n"
    "<app_description>\n"
    "\n"
    "Persona:\n"
    "<persona>\n"
    "\n"
    "Task:\n"
    "<task>\n"
    "\n"
    "Inspect the attached screen recording of this task for violations of the following "
    "usability heuristic only.\n"
    "\n"
    "Heuristic: <heuristic_name>\n"
    "Guiding question: <guiding_question>\n"
    "\n"
    "Identify every usability issue related to this heuristic that is observable in the "
    "recording. For each issue, provide a concise description of the problem and an "
    "actionable recommendation for resolving it.\n"
    "\n"
    "Return JSON output for further processing, using exactly this schema and nothing "
    "else:\n"
    "{\"issues\": [{\"description\": \"...\", \"recommendation\": \"...\"}]}\n"
    "If no issue related to this heuristic is observable, return {\"issues\": []}.";

const char* kIssueSummary =
    "The following usability issue descriptions were identified independently under "
    "different usability heuristics, but they describe the same underlying issue:\n"
    "\n"
    "<issue_descriptions>\n"
    "\n"
    "Summarize them into a single concise issue description. Preserve heuristic-specific "
    "nuances that add context or detail, and remove repetition.\n"
    "\n"
    "Return JSON output for further processing, using exactly this schema and nothing "
    "else:\n"
    "{\"summary\": \"...\"}";

const char* kRecommendationSummary =
    "The following improvement recommendations address the same underlying usability "
    "issue:\n"
    "\n"
    "<recommendations>\n"
    "\n"
    "Merge them into a single actionable improvement recommendation. Preserve distinct "
    "actionable details, and remove repetition.\n"
    "\n"
    "Return JSON output for further processing, using exactly this schema and nothing "
    "else:\n"
    "{\"recommendation\": \"...\"}";

const char* kRankSystem =
    "You are a usability reviewer assigned to prioritize usability issues found in an "
    "interactive application. You order issues by severity so that developers can address "
    "the most critical ones first. Follow the requested output format exactly.";

const char* kRankUser =
    "Application description:\n"
    "<app_description>\n"
    "\n"
    "Persona:\n"
    "<persona>\n"
    "\n"
    "Task:\n"
    "<task>\n"
    "\n"
    "The following usability issues were identified for this task. Each issue is listed "
    "with a zero-based index, its description, and its improvement recommendation.\n"
    "\n"
    "<issues>\n"
    "\n"
    "Rank the issues from most severe to least severe. Consider the impact on task "
    "success, user frustration, the likelihood of occurrence, and the effort for "
    "recovery.\n"
    "\n"
    "Return JSON output for further processing, using exactly this schema and nothing "
    "else:\n"
    "{\"order\": [index of most severe, ..., index of least severe]}";

const char* builtin_body(TemplateId id) {
    switch (id) {
    case TemplateId::eval_system: return kEvalSystem;
    case TemplateId::eval_user: return kEvalUser;
    case TemplateId::issue_summary: return kIssueSummary;
    case TemplateId::recommendation_summary: return kRecommendationSummary;
    case TemplateId::rank_system: return kRankSystem;
    case TemplateId::rank_user: return kRankUser;
    }
    throw Error("unknown template id");
}

// Returns the placeholder name if `body[pos]` starts one of `names`, wrapped
// in angle brackets.
const std::string* match_placeholder(const std::string& body, std::size_t pos,
                                     const std::vector<std::string>& names) {
    for (const auto& name : names) {
        const std::size_t n = name.size();
        if (pos + n + 2 > body.size()) continue;
        if (body[pos] != '<' || body[pos + n + 1] != '>') continue;
        if (body.compare(pos + 1, n, name) == 0) return &name;
    }
    return nullptr;
}

} // namespace

const std::vector<TemplateId>& all_template_ids() {
    static const std::vector<TemplateId> ids = {
        TemplateId::eval_system,    TemplateId::eval_user,   TemplateId::issue_summary,
        TemplateId::recommendation_summary, TemplateId::rank_system, TemplateId::rank_user,
    };
    return ids;
}

std::string template_filename(TemplateId id) {
    switch (id) {
    case TemplateId::eval_system: return "eval_system.txt";
    case TemplateId::eval_user: return "eval_user.txt";
    case TemplateId::issue_summary: return "issue_summary.txt";
    case TemplateId::recommendation_summary: return "recommendation_summary.txt";
    case TemplateId::rank_system: return "rank_system.txt";
    case TemplateId::rank_user: return "rank_user.txt";
    }
    throw Error("unknown template id");
}

const std::vector<std::string>& required_placeholders(TemplateId id) {
    static const std::vector<std::string> none = {};
    static const std::vector<std::string> eval_user = {
        "app_description", "persona", "task", "heuristic_name", "guiding_question"};
    static const std::vector<std::string> issue_summary = {"issue_descriptions"};
    static const std::vector<std::string> recommendation_summary = {"recommendations"};
    static const std::vector<std::string> rank_user = {"app_description", "persona", "task",
                                                       "issues"};
    switch (id) {
    case TemplateId::eval_system: return none;
    case TemplateId::eval_user: return eval_user;
    case TemplateId::issue_summary: return issue_summary;
    case TemplateId::recommendation_summary: return recommendation_summary;
    case TemplateId::rank_system: return none;
    case TemplateId::rank_user: return rank_user;
    }
    throw Error("unknown template id");
}

TemplateSet TemplateSet::builtin() {
    TemplateSet set;
    for (TemplateId id : all_template_ids()) set.templates_[id] = {id, builtin_body(id)};
    return set;
}

TemplateSet TemplateSet::load(const std::optional<std::filesystem::path>& dir) {
    TemplateSet set = builtin();
    if (!dir) return set;

    for (TemplateId id : all_template_ids()) {
        const auto path = *dir / template_filename(id);
        if (!std::filesystem::exists(path)) continue; // fall back to built-in

        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot read template file: " + path.string());
        std::ostringstream body;
        body << in.rdbuf();
        set.templates_[id] = {id, body.str()};

        for (const auto& name : required_placeholders(id)) {
            if (set.templates_[id].body.find("<" + name + ">") == std::string::npos)
                throw ConfigError("template " + template_filename(id) +
                                  " is missing required placeholder <" + name + ">");
        }
    }
    return set;
}

const PromptTemplate& TemplateSet::get(TemplateId id) const {
    return templates_.at(id);
}

std::string TemplateSet::render(TemplateId id,
                                const std::map<std::string, std::string>& variables) const {
    const std::string& body = get(id).body;
    const auto& names = required_placeholders(id);

    std::string out;
    out.reserve(body.size());
    for (std::size_t i = 0; i < body.size();) {
        if (body[i] == '<') {
            if (const std::string* name = match_placeholder(body, i, names)) {
                const auto it = variables.find(*name);
                if (it == variables.end()) throw MissingVariableError(*name);
                out += it->second;
                i += name->size() + 2;
                continue;
            }
        }
        out += body[i];
        ++i;
    }
    return out;
}

} // namespace uxlens

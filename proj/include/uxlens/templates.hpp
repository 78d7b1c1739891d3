#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uxlens {

enum class TemplateId {
    eval_system,
    eval_user,
    issue_summary,
    recommendation_summary,
    rank_system,
    rank_user,
};

// All template ids, in a fixed order.
const std::vector<TemplateId>& all_template_ids();

// File name a template is loaded from inside a templates directory,
// e.g. "eval_user.txt".
std::string template_filename(TemplateId id);

// Placeholders (without angle brackets) that the template body must contain
// and render() must receive for this id.
const std::vector<std::string>& required_placeholders(TemplateId id);

struct PromptTemplate {
    TemplateId id;
    std::string body; // placeholders appear as <name>
};

// The six prompt templates, either the built-in defaults or per-file
// overrides from a templates directory (missing files fall back to the
// built-in text).
class TemplateSet {
public:
    static TemplateSet builtin();

    // dir == nullopt yields the built-ins. A present but unreadable file or a
    // body missing a required placeholder throws ConfigError.
    static TemplateSet load(const std::optional<std::filesystem::path>& dir);

    const PromptTemplate& get(TemplateId id) const;

    // Pure single-pass substitution of <name> placeholders. Substituted
    // values are never re-scanned. Throws MissingVariableError when a
    // required placeholder has no entry in `variables`.
    std::string render(TemplateId id, const std::map<std::string, std::string>& variables) const;

private:
    std::map<TemplateId, PromptTemplate> templates_;
};

} // namespace uxlens

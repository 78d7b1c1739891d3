#include "uxlens/evaluate.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include <nlohmann/json.hpp>

#include "uxlens/budget.hpp"
#include "uxlens/errors.hpp"
#include "uxlens/json_extract.hpp"
#include "uxlens/log.hpp"
#include "uxlens/text.hpp"

namespace uxlens {

namespace {

constexpr const char* kRepairInstruction =
    "\n\nRespond with only the JSON object in the requested schema.";

// Parses {"issues": [{"description", "recommendation"}]} into RawIssues.
// Throws SchemaError on any shape violation; blank entries are dropped.
std::vector<RawIssue> parse_issues(const std::string& model_text, const TaskScenario& scenario,
                                   const Heuristic& heuristic) {
    const nlohmann::json doc = extract_json(model_text);
    if (!doc.is_object() || !doc.contains("issues") || !doc["issues"].is_array())
        throw SchemaError("evaluation response lacks an \"issues\" array");

    std::vector<RawIssue> issues;
    for (const auto& entry : doc["issues"]) {
        if (!entry.is_object() || !entry.contains("description") ||
            !entry["description"].is_string() || !entry.contains("recommendation") ||
            !entry["recommendation"].is_string())
            throw SchemaError("evaluation issue entry is not "
                              "{\"description\": string, \"recommendation\": string}");

        const std::string description = trim(entry["description"].get<std::string>());
        const std::string recommendation = trim(entry["recommendation"].get<std::string>());
        if (description.empty() || recommendation.empty()) {
            log_warn(scenario.id, "dropping blank issue under heuristic " +
                                      std::to_string(heuristic.id.ordinal()));
            continue;
        }
        issues.push_back({scenario.id, heuristic.id, description, recommendation});
    }
    return issues;
}

} // namespace

ChatRequest build_evaluation_request(const AppProfile& app, const TaskScenario& scenario,
                                     const Heuristic& heuristic, const TemplateSet& templates) {
    ChatRequest request;
    request.system_prompt = templates.render(TemplateId::eval_system, {});
    request.user_prompt = templates.render(TemplateId::eval_user,
                                           {{"app_description", app.description},
                                            {"persona", scenario.persona},
                                            {"task", scenario.task_instruction},
                                            {"heuristic_name", heuristic.name},
                                            {"guiding_question", heuristic.guiding_question}});
    request.attachments = {scenario.recording};
    return request;
}

std::vector<RawIssue> evaluate_heuristic(const AppProfile& app, const TaskScenario& scenario,
                                         const Heuristic& heuristic, const TemplateSet& templates,
                                         ModelSession& session, const EvalOptions& options) {
    const auto tokens = estimate_video_tokens(scenario.recording.duration_seconds);
    const auto verdict = check_context_budget(tokens, options.context_limit, options.text_reserve);
    if (!verdict.ok)
        throw BudgetExceededError("recording of scenario " + scenario.id + " exceeds the context "
                                  "budget by " + std::to_string(verdict.excess) + " tokens");

    const ChatRequest request = build_evaluation_request(app, scenario, heuristic, templates);
    const ChatResponse response = session.chat(request);
    try {
        return parse_issues(response.text, scenario, heuristic);
    } catch (const Error&) {
        // One repair attempt with an appended corrective instruction.
        ChatRequest repair = request;
        repair.user_prompt += kRepairInstruction;
        const ChatResponse second = session.chat(repair);
        try {
            return parse_issues(second.text, scenario, heuristic);
        } catch (const Error& e) {
            throw SchemaError("heuristic " + std::to_string(heuristic.id.ordinal()) + " (" +
                              heuristic.name + "): unusable model output after repair: " +
                              e.what());
        }
    }
}

std::vector<RawIssue> evaluate_scenario(const AppProfile& app, const TaskScenario& scenario,
                                        const std::vector<Heuristic>& catalog,
                                        const TemplateSet& templates, ModelSession& session,
                                        const EvalOptions& options) {
    if (catalog.size() != HeuristicId::kCount)
        throw PreconditionError("catalog must contain exactly 10 heuristics, got " +
                                std::to_string(catalog.size()));
    if (options.parallelism < 1) throw PreconditionError("parallelism must be >= 1");

    const std::size_t n = catalog.size();
    std::vector<std::vector<RawIssue>> slots(n);
    std::vector<std::exception_ptr> failures(n);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                slots[i] = evaluate_heuristic(app, scenario, catalog[i], templates, session,
                                              options);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const std::size_t thread_count =
        std::min<std::size_t>(static_cast<std::size_t>(options.parallelism), n);
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Report the failure with the smallest ordinal so the outcome does not
    // depend on completion order.
    for (std::size_t i = 0; i < n; ++i)
        if (failures[i]) std::rethrow_exception(failures[i]);

    std::vector<RawIssue> all;
    for (auto& slot : slots)
        for (auto& issue : slot) all.push_back(std::move(issue));
    return all;
}

} // namespace uxlens

#include <doctest.h>

#include <nlohmann/json.hpp>

#include "support.hpp"
#include "uxlens/errors.hpp"
#include "uxlens/evaluate.hpp"
#include "uxlens/heuristics.hpp"

using namespace uxlens;

namespace {

struct Fixture {
    uxtest::TempDir tmp;
    AppProfile app{"DemoApp", "A demo application."};
    TaskScenario scenario;
    std::vector<Heuristic> catalog = load_heuristic_catalog();
    TemplateSet templates = TemplateSet::builtin();
    EvalOptions options;

    Fixture() {
        const auto video = tmp.path() / "run.mp4";
        uxtest::write_file(video, "mp4 bytes");
        scenario = {"demo-task", "A tester.", "Do the thing.", {video, "run.mp4", 30.0}};
    }
};

std::string issues_response(std::initializer_list<std::pair<const char*, const char*>> issues) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [d, r] : issues)
        list.push_back({{"description", d}, {"recommendation", r}});
    return nlohmann::json{{"issues", list}}.dump();
}

} // namespace

TEST_CASE("evaluate_heuristic parses issues and tags them") {
    Fixture fx;
    uxtest::FnSession session;
    session.chat_fn = [&](const ChatRequest& request) -> ChatResponse {
        CHECK(request.attachments.size() == 1);
        CHECK(request.user_prompt.find(fx.catalog[0].guiding_question) != std::string::npos);
        CHECK(request.user_prompt.find(fx.app.description) != std::string::npos);
        return {issues_response({{"No loading indicator after submit.", "Add a spinner."}}), {}};
    };

    const auto issues = evaluate_heuristic(fx.app, fx.scenario, fx.catalog[0], fx.templates,
                                           session, fx.options);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].scenario_id == "demo-task");
    CHECK(issues[0].heuristic.ordinal() == 1);
    CHECK(issues[0].description == "No loading indicator after submit.");
    CHECK(issues[0].recommendation == "Add a spinner.");
    CHECK(session.chat_count == 1);
}

TEST_CASE("empty issue list is a valid result") {
    Fixture fx;
    uxtest::FnSession session;
    session.chat_fn = [](const ChatRequest&) -> ChatResponse { return {R"({"issues": []})", {}}; };
    CHECK(evaluate_heuristic(fx.app, fx.scenario, fx.catalog[3], fx.templates, session,
                             fx.options)
              .empty());
}

TEST_CASE("blank issues are dropped, not fatal") {
    Fixture fx;
    uxtest::FnSession session;
    session.chat_fn = [](const ChatRequest&) -> ChatResponse {
        return {issues_response({{"  ", "Trim me."}, {"Real issue.", "Real fix."}}), {}};
    };
    const auto issues = evaluate_heuristic(fx.app, fx.scenario, fx.catalog[0], fx.templates,
                                           session, fx.options);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].description == "Real issue.");
}

TEST_CASE("prose-only output triggers one repair attempt then SchemaError") {
    Fixture fx;
    uxtest::FnSession session;
    std::vector<std::string> prompts;
    session.chat_fn = [&](const ChatRequest& request) -> ChatResponse {
        prompts.push_back(request.user_prompt);
        return {"I could not find anything worth reporting.", {}};
    };
    CHECK_THROWS_AS(evaluate_heuristic(fx.app, fx.scenario, fx.catalog[0], fx.templates, session,
                                       fx.options),
                    SchemaError);
    REQUIRE(prompts.size() == 2);
    CHECK(prompts[1].find("Respond with only the JSON object") != std::string::npos);
}

TEST_CASE("repair succeeds when the second response is valid") {
    Fixture fx;
    uxtest::FnSession session;
    int calls = 0;
    session.chat_fn = [&](const ChatRequest&) -> ChatResponse {
        return {++calls == 1 ? "no json here"
                             : issues_response({{"Recovered issue.", "Recovered fix."}}),
                {}};
    };
    const auto issues = evaluate_heuristic(fx.app, fx.scenario, fx.catalog[0], fx.templates,
                                           session, fx.options);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].description == "Recovered issue.");
    CHECK(calls == 2);
}

TEST_CASE("over-budget recordings are rejected before any call") {
    Fixture fx;
    fx.options.context_limit = 1000; // 30 s -> 7740 tokens, far over
    uxtest::FnSession session;
    CHECK_THROWS_AS(evaluate_heuristic(fx.app, fx.scenario, fx.catalog[0], fx.templates, session,
                                       fx.options),
                    BudgetExceededError);
    CHECK(session.chat_count == 0);
}

TEST_CASE("evaluate_scenario issues one call per heuristic and sorts output") {
    Fixture fx;
    auto scripted = [&](const ChatRequest& request) -> ChatResponse {
        // issues under heuristics 1, 5 (two), and 9; empty elsewhere
        if (request.user_prompt.find("Heuristic: " + fx.catalog[0].name) != std::string::npos)
            return {issues_response({{"h1 issue", "fix"}}), {}};
        if (request.user_prompt.find("Heuristic: " + fx.catalog[4].name) != std::string::npos)
            return {issues_response({{"h5 first", "fix"}, {"h5 second", "fix"}}), {}};
        if (request.user_prompt.find("Heuristic: " + fx.catalog[8].name) != std::string::npos)
            return {issues_response({{"h9 issue", "fix"}}), {}};
        return {R"({"issues": []})", {}};
    };

    std::vector<std::vector<RawIssue>> runs;
    for (const int parallelism : {1, 10}) {
        uxtest::FnSession session;
        session.chat_fn = scripted;
        fx.options.parallelism = parallelism;
        runs.push_back(
            evaluate_scenario(fx.app, fx.scenario, fx.catalog, fx.templates, session, fx.options));
        CHECK(session.chat_count == 10);
    }

    for (const auto& issues : runs) {
        REQUIRE(issues.size() == 4);
        CHECK(issues[0].description == "h1 issue");
        CHECK(issues[1].description == "h5 first");
        CHECK(issues[2].description == "h5 second");
        CHECK(issues[3].description == "h9 issue");
        CHECK(std::is_sorted(issues.begin(), issues.end(),
                             [](const RawIssue& a, const RawIssue& b) {
                                 return a.heuristic.ordinal() < b.heuristic.ordinal();
                             }));
    }
}

TEST_CASE("all-empty responses produce an empty scenario result") {
    Fixture fx;
    uxtest::FnSession session;
    session.chat_fn = [](const ChatRequest&) -> ChatResponse { return {R"({"issues": []})", {}}; };
    CHECK(evaluate_scenario(fx.app, fx.scenario, fx.catalog, fx.templates, session, fx.options)
              .empty());
}

TEST_CASE("catalog cardinality is a precondition") {
    Fixture fx;
    std::vector<Heuristic> nine(fx.catalog.begin(), fx.catalog.end() - 1);
    uxtest::FnSession session;
    CHECK_THROWS_AS(evaluate_scenario(fx.app, fx.scenario, nine, fx.templates, session,
                                      fx.options),
                    PreconditionError);
}

TEST_CASE("the smallest failing ordinal is reported regardless of parallelism") {
    Fixture fx;
    fx.options.parallelism = 10;
    uxtest::FnSession session;
    session.chat_fn = [&](const ChatRequest& request) -> ChatResponse {
        // heuristics 4 and 7 fail hard; both attempts return prose
        if (request.user_prompt.find("Heuristic: " + fx.catalog[3].name) != std::string::npos ||
            request.user_prompt.find("Heuristic: " + fx.catalog[6].name) != std::string::npos)
            return {"not json", {}};
        return {R"({"issues": []})", {}};
    };
    try {
        evaluate_scenario(fx.app, fx.scenario, fx.catalog, fx.templates, session, fx.options);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("heuristic 4") != std::string::npos);
    }
}

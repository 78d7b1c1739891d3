#include "uxlens/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "uxlens/errors.hpp"
#include "uxlens/evaluate.hpp"
#include "uxlens/heuristics.hpp"
#include "uxlens/log.hpp"
#include "uxlens/report.hpp"
#include "uxlens/version.hpp"

namespace uxlens {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("short write on " + path.string());
}

void write_canonical(const std::filesystem::path& path, const ordered_json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

nlohmann::json read_artifact(const std::filesystem::path& path, const char* produced_by) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("stage artifact missing: " + path.string() + " (run the " +
                    std::string(produced_by) + " stage first)");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error("corrupt stage artifact " + path.string() + ": " + e.what());
    }
    return doc;
}

ordered_json raw_issue_to_json(const RawIssue& issue) {
    return {{"heuristic", issue.heuristic.ordinal()},
            {"description", issue.description},
            {"recommendation", issue.recommendation}};
}

RawIssue raw_issue_from_json(const nlohmann::json& doc, const std::string& scenario_id) {
    return {scenario_id, HeuristicId(doc.at("heuristic").get<int>()),
            doc.at("description").get<std::string>(),
            doc.at("recommendation").get<std::string>()};
}

ordered_json aggregated_to_json(const AggregatedIssue& issue) {
    ordered_json members = ordered_json::array();
    for (const auto& member : issue.members) members.push_back(raw_issue_to_json(member));
    ordered_json heuristics = ordered_json::array();
    for (const auto& id : issue.violated_heuristics()) heuristics.push_back(id.ordinal());
    return {{"summary", issue.summary},
            {"recommendation_summary", issue.recommendation_summary},
            {"violated_heuristics", heuristics},
            {"member_count", issue.member_count()},
            {"members", members}};
}

AggregatedIssue aggregated_from_json(const nlohmann::json& doc, const std::string& scenario_id) {
    AggregatedIssue issue;
    issue.scenario_id = scenario_id;
    issue.summary = doc.at("summary").get<std::string>();
    issue.recommendation_summary = doc.at("recommendation_summary").get<std::string>();
    for (const auto& member : doc.at("members"))
        issue.members.push_back(raw_issue_from_json(member, scenario_id));
    return issue;
}

struct ScenarioContext {
    const RunConfig& config;
    const PipelineOptions& options;
    const std::vector<Heuristic>& catalog;
    const TemplateSet& templates;
    ModelSession& session;
    const TaskScenario& scenario;
};

double effective_threshold(const ScenarioContext& ctx) {
    return ctx.options.threshold.value_or(ctx.config.aggregation.similarity_threshold);
}

void stage_evaluate_run(const ScenarioContext& ctx) {
    const auto issues = evaluate_scenario(ctx.config.app, ctx.scenario, ctx.catalog,
                                          ctx.templates, ctx.session, ctx.config.evaluation);
    ordered_json doc;
    doc["scenario_id"] = ctx.scenario.id;
    doc["issues"] = ordered_json::array();
    for (const auto& issue : issues) doc["issues"].push_back(raw_issue_to_json(issue));
    write_canonical(raw_issues_path(ctx.options, ctx.scenario), doc);
    log_info(ctx.scenario.id, "evaluate: " + std::to_string(issues.size()) + " raw issues");
}

void stage_aggregate_run(const ScenarioContext& ctx) {
    const auto raw_doc = read_artifact(raw_issues_path(ctx.options, ctx.scenario), "evaluate");
    std::vector<RawIssue> issues;
    for (const auto& entry : raw_doc.at("issues"))
        issues.push_back(raw_issue_from_json(entry, ctx.scenario.id));

    AggregateOptions agg = ctx.config.aggregation;
    agg.similarity_threshold = effective_threshold(ctx);
    const AggregationOutcome outcome =
        aggregate_scenario_detailed(issues, ctx.templates, ctx.session, agg);

    ordered_json doc;
    doc["scenario_id"] = ctx.scenario.id;
    doc["similarity_threshold"] = agg.similarity_threshold;
    doc["groups"] = ordered_json::array();
    for (const auto& group : outcome.groups) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [key, sim] : group.pair_similarities)
            pairs.push_back({{"a", key.first}, {"b", key.second}, {"similarity", sim}});
        doc["groups"].push_back(
            {{"member_indices", group.member_indices}, {"pair_similarities", pairs}});
    }
    doc["issues"] = ordered_json::array();
    for (const auto& issue : outcome.issues) doc["issues"].push_back(aggregated_to_json(issue));
    write_canonical(aggregated_path(ctx.options, ctx.scenario), doc);
    log_info(ctx.scenario.id, "aggregate: " + std::to_string(issues.size()) + " raw issues -> " +
                                  std::to_string(outcome.issues.size()) + " groups");
}

void stage_rank_run(const ScenarioContext& ctx) {
    const auto agg_doc = read_artifact(aggregated_path(ctx.options, ctx.scenario), "aggregate");
    std::vector<AggregatedIssue> issues;
    for (const auto& entry : agg_doc.at("issues"))
        issues.push_back(aggregated_from_json(entry, ctx.scenario.id));

    RankOutcome outcome;
    if (issues.empty())
        outcome.ranking_mode = "empty";
    else
        outcome = rank_scenario(ctx.config.app, ctx.scenario, issues, ctx.templates, ctx.session);

    ordered_json doc;
    doc["scenario_id"] = ctx.scenario.id;
    doc["similarity_threshold"] = agg_doc.at("similarity_threshold");
    doc["ranking_mode"] = outcome.ranking_mode;
    doc["ranked"] = ordered_json::array();
    for (const auto& ranked : outcome.ranked) {
        ordered_json entry;
        entry["rank"] = ranked.rank;
        entry["rationale"] = ranked.rationale ? ordered_json(*ranked.rationale) : ordered_json();
        entry["issue"] = aggregated_to_json(ranked.issue);
        doc["ranked"].push_back(std::move(entry));
    }
    write_canonical(ranked_path(ctx.options, ctx.scenario), doc);
    log_info(ctx.scenario.id, "rank: mode " + outcome.ranking_mode);
}

void stage_report_run(const ScenarioContext& ctx) {
    const auto ranked_doc = read_artifact(ranked_path(ctx.options, ctx.scenario), "rank");

    EvaluationReport report;
    report.app = ctx.config.app;
    report.scenario = ctx.scenario;
    for (const auto& entry : ranked_doc.at("ranked")) {
        RankedIssue ranked;
        ranked.rank = entry.at("rank").get<int>();
        if (entry.contains("rationale") && entry.at("rationale").is_string())
            ranked.rationale = entry.at("rationale").get<std::string>();
        ranked.issue = aggregated_from_json(entry.at("issue"), ctx.scenario.id);
        report.ranked.push_back(std::move(ranked));
    }
    report.provenance = {
        ctx.config.provider.chat_model_id,
        ctx.config.provider.embed_model_id,
        ranked_doc.at("similarity_threshold").get<double>(),
        kPipelineVersion,
        provenance_timestamp(ctx.options.mode),
        ranked_doc.at("ranking_mode").get<std::string>(),
    };

    const auto& formats = ctx.config.report.formats;
    const auto top_k = ctx.options.top_k ? ctx.options.top_k : ctx.config.report.top_k;
    if (std::find(formats.begin(), formats.end(), "json") != formats.end())
        write_text_file(report_json_path(ctx.options, ctx.scenario),
                        render_json(report, ctx.catalog));
    if (std::find(formats.begin(), formats.end(), "markdown") != formats.end())
        write_text_file(report_markdown_path(ctx.options, ctx.scenario),
                        render_markdown(report, ctx.catalog, top_k));
    log_info(ctx.scenario.id, "report: " + std::to_string(report.ranked.size()) + " issues");
}

void run_stage(const ScenarioContext& ctx, Stage stage) {
    switch (stage) {
    case Stage::evaluate: stage_evaluate_run(ctx); return;
    case Stage::aggregate: stage_aggregate_run(ctx); return;
    case Stage::rank: stage_rank_run(ctx); return;
    case Stage::report: stage_report_run(ctx); return;
    }
}

} // namespace

Stage parse_stage(const std::string& name) {
    if (name == "evaluate") return Stage::evaluate;
    if (name == "aggregate") return Stage::aggregate;
    if (name == "rank") return Stage::rank;
    if (name == "report") return Stage::report;
    throw ConfigError("unknown stage: " + name + " (expected evaluate|aggregate|rank|report)");
}

std::string stage_name(Stage stage) {
    switch (stage) {
    case Stage::evaluate: return "evaluate";
    case Stage::aggregate: return "aggregate";
    case Stage::rank: return "rank";
    case Stage::report: return "report";
    }
    return "?";
}

std::filesystem::path raw_issues_path(const PipelineOptions& options,
                                      const TaskScenario& scenario) {
    return options.out_dir / scenario.id / "raw_issues.json";
}
std::filesystem::path aggregated_path(const PipelineOptions& options,
                                      const TaskScenario& scenario) {
    return options.out_dir / scenario.id / "aggregated.json";
}
std::filesystem::path ranked_path(const PipelineOptions& options, const TaskScenario& scenario) {
    return options.out_dir / scenario.id / "ranked.json";
}
std::filesystem::path report_json_path(const PipelineOptions& options,
                                       const TaskScenario& scenario) {
    return options.out_dir / scenario.id / "report.json";
}
std::filesystem::path report_markdown_path(const PipelineOptions& options,
                                           const TaskScenario& scenario) {
    return options.out_dir / scenario.id / "report.md";
}

std::string provenance_timestamp(Mode mode) {
    std::time_t t = 0;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else if (mode == Mode::replay) {
        t = 0; // pinned: replay reports must be byte-stable across runs
    } else {
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::vector<ScenarioResult> run_pipeline(const RunConfig& config, const PipelineOptions& options,
                                         Client& client) {
    if (options.first_stage > options.last_stage)
        throw ConfigError("first stage is after last stage");

    const std::vector<Heuristic> catalog = config.heuristics_override
                                               ? load_heuristic_catalog(*config.heuristics_override)
                                               : load_heuristic_catalog();
    const TemplateSet templates =
        TemplateSet::load(options.templates_dir ? options.templates_dir : config.templates_dir);

    std::vector<ScenarioResult> results(config.scenarios.size());
    auto run_scenario = [&](std::size_t index) {
        const TaskScenario& scenario = config.scenarios[index];
        ScenarioResult& result = results[index];
        result.scenario_id = scenario.id;

        ClientSession session(client, options.mode);
        const ScenarioContext ctx{config, options, catalog, templates, session, scenario};

        Stage stage = options.first_stage;
        try {
            for (int s = static_cast<int>(options.first_stage);
                 s <= static_cast<int>(options.last_stage); ++s) {
                stage = static_cast<Stage>(s);
                run_stage(ctx, stage);
            }
            result.ok = true;
        } catch (const std::exception& e) {
            result.failed_stage = stage_name(stage);
            result.error = e.what();
            log_warn(scenario.id, "failed at stage " + result.failed_stage + ": " + result.error);
        }
    };

    const std::size_t n = config.scenarios.size();
    const std::size_t jobs = std::min<std::size_t>(std::max(options.jobs, 1), n);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_scenario(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) return;
                    run_scenario(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    return results;
}

} // namespace uxlens

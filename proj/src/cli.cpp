#include "uxlens/cli.hpp"

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "uxlens/budget.hpp"
#include "uxlens/errors.hpp"
#include "uxlens/pipeline.hpp"
#include "uxlens/transport.hpp"
#include "uxlens/version.hpp"

namespace uxlens {

namespace {

struct CliArgs {
    std::string config_path;
    std::string mode = "replay";
    double threshold = -1.0; // < 0 means "not given"
    int top_k = 0;           // 0 means "not given"
    std::string stage;       // run only; empty means "through report"
    int jobs = 1;
    std::string cache_dir;
    std::string out_dir = "out";
    std::string templates_dir;
};

void add_common_options(CLI::App* cmd, CliArgs& args, bool with_stage) {
    cmd->add_option("--config", args.config_path, "Path to the run configuration (JSON)")
        ->required();
    cmd->add_option("--mode", args.mode, "Provider mode: live|record|replay")
        ->default_str("replay");
    cmd->add_option("--jobs", args.jobs, "Scenarios to process in parallel")->default_val(1);
    cmd->add_option("--cache-dir", args.cache_dir, "Record/replay cache directory override");
    cmd->add_option("--out-dir", args.out_dir, "Output directory for artifacts and reports")
        ->default_str("out");
    cmd->add_option("--templates-dir", args.templates_dir, "Prompt template directory override");
    cmd->add_option("--threshold", args.threshold,
                    "Similarity threshold override for aggregation");
    cmd->add_option("--top-k", args.top_k, "Limit Markdown reports to the k most severe issues");
    if (with_stage)
        cmd->add_option("--stage", args.stage,
                        "Stop after this stage: evaluate|aggregate|rank|report");
}

PipelineOptions to_pipeline_options(const CliArgs& args) {
    PipelineOptions options;
    options.mode = parse_mode(args.mode);
    if (args.threshold >= 0.0) {
        if (args.threshold == 0.0 || args.threshold > 1.0)
            throw ConfigError("--threshold must be in (0, 1]");
        options.threshold = args.threshold;
    }
    if (args.top_k != 0) {
        if (args.top_k < 1) throw ConfigError("--top-k must be >= 1");
        options.top_k = args.top_k;
    }
    if (args.jobs < 1) throw ConfigError("--jobs must be >= 1");
    options.jobs = args.jobs;
    options.out_dir = args.out_dir;
    if (!args.templates_dir.empty()) options.templates_dir = args.templates_dir;
    return options;
}

int execute_pipeline(const CliArgs& args, Stage first, Stage last) {
    RunConfig config = load_config(args.config_path);
    PipelineOptions options = to_pipeline_options(args);
    options.first_stage = first;
    options.last_stage = last;

    const std::filesystem::path cache_dir =
        args.cache_dir.empty() ? config.cache_dir : std::filesystem::path(args.cache_dir);
    auto cache = std::make_shared<DiskCache>(cache_dir);
    Client client(config.provider, make_http_transport(), cache);

    const auto results = run_pipeline(config, options, client);

    bool all_ok = true;
    for (const auto& result : results) {
        if (result.ok) {
            std::cerr << "[" << result.scenario_id << "] ok\n";
        } else {
            all_ok = false;
            std::cerr << "[" << result.scenario_id << "] FAILED at stage " << result.failed_stage
                      << ": " << result.error << "\n";
        }
    }
    return all_ok ? kExitOk : kExitScenarioFailed;
}

} // namespace

int cmd_estimate(const RunConfig& config, std::ostream& out) {
    bool all_fit = true;
    out << std::left << std::setw(32) << "scenario" << std::right << std::setw(12) << "duration_s"
        << std::setw(14) << "video_tokens" << "  verdict\n";
    for (const auto& scenario : config.scenarios) {
        const auto tokens = estimate_video_tokens(scenario.recording.duration_seconds);
        const auto verdict = check_context_budget(tokens, config.evaluation.context_limit,
                                                  config.evaluation.text_reserve);
        out << std::left << std::setw(32) << scenario.id << std::right << std::setw(12)
            << scenario.recording.duration_seconds << std::setw(14) << tokens << "  "
            << (verdict.ok ? "ok" : "over_budget(+" + std::to_string(verdict.excess) + ")")
            << "\n";
        all_fit = all_fit && verdict.ok;
    }
    return all_fit ? kExitOk : kExitScenarioFailed;
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Heuristic usability evaluation of task screen recordings"};
    app.set_version_flag("--version", std::string(kPipelineVersion));
    app.require_subcommand(1);

    CliArgs args;
    auto* run = app.add_subcommand("run", "Run the full pipeline (or a prefix of it)");
    add_common_options(run, args, /*with_stage=*/true);
    auto* estimate = app.add_subcommand("estimate", "Check recordings against the token budget");
    estimate->add_option("--config", args.config_path, "Path to the run configuration (JSON)")
        ->required();
    auto* evaluate = app.add_subcommand("evaluate", "Stage: per-heuristic evaluation");
    add_common_options(evaluate, args, false);
    auto* aggregate = app.add_subcommand("aggregate", "Stage: group and merge similar issues");
    add_common_options(aggregate, args, false);
    auto* rank = app.add_subcommand("rank", "Stage: order issues by severity");
    add_common_options(rank, args, false);
    auto* report = app.add_subcommand("report", "Stage: render JSON and Markdown reports");
    add_common_options(report, args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (estimate->parsed()) return cmd_estimate(load_config(args.config_path), std::cout);
        if (run->parsed()) {
            const Stage last = args.stage.empty() ? Stage::report : parse_stage(args.stage);
            return execute_pipeline(args, Stage::evaluate, last);
        }
        if (evaluate->parsed()) return execute_pipeline(args, Stage::evaluate, Stage::evaluate);
        if (aggregate->parsed()) return execute_pipeline(args, Stage::aggregate, Stage::aggregate);
        if (rank->parsed()) return execute_pipeline(args, Stage::rank, Stage::rank);
        if (report->parsed()) return execute_pipeline(args, Stage::report, Stage::report);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}

} // namespace uxlens

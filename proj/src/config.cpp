#include "uxlens/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "uxlens/errors.hpp"
#include "uxlens/text.hpp"

namespace uxlens {

namespace {

using nlohmann::json;

std::string require_string(const json& obj, const char* key, const std::string& field) {
    if (!obj.contains(key) || !obj[key].is_string())
        throw ConfigInvalidError(field, "missing or not a string");
    const std::string value = trim(obj[key].get<std::string>());
    if (value.empty()) throw ConfigInvalidError(field, "must be non-empty");
    return value;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

TaskScenario parse_scenario(const json& doc, const std::filesystem::path& base,
                            std::size_t index) {
    const std::string field = "scenarios[" + std::to_string(index) + "]";
    if (!doc.is_object()) throw ConfigInvalidError(field, "must be an object");

    TaskScenario scenario;
    scenario.id = require_string(doc, "id", field + ".id");
    scenario.persona = require_string(doc, "persona", field + ".persona");
    scenario.task_instruction = require_string(doc, "task_instruction", field + ".task_instruction");

    if (!doc.contains("recording") || !doc["recording"].is_object())
        throw ConfigInvalidError(field + ".recording", "missing or not an object");
    const json& rec = doc["recording"];
    scenario.recording.configured_path = require_string(rec, "path", field + ".recording.path");
    scenario.recording.path = resolve(base, scenario.recording.configured_path);

    if (!rec.contains("duration_seconds") || !rec["duration_seconds"].is_number())
        throw ConfigInvalidError(field + ".recording.duration_seconds",
                                 "missing or not a number");
    scenario.recording.duration_seconds = rec["duration_seconds"].get<double>();
    if (scenario.recording.duration_seconds < 0)
        throw ConfigInvalidError(field + ".recording.duration_seconds", "must be >= 0");

    std::ifstream probe(scenario.recording.path, std::ios::binary);
    if (!probe)
        throw VideoMissingError("recording not readable: " + scenario.recording.path.string());
    return scenario;
}

void parse_provider(const json& doc, ProviderConfig& provider) {
    if (doc.contains("chat_endpoint")) provider.chat_endpoint = doc["chat_endpoint"];
    if (doc.contains("chat_model_id")) provider.chat_model_id = doc["chat_model_id"];
    if (doc.contains("embed_endpoint")) provider.embed_endpoint = doc["embed_endpoint"];
    if (doc.contains("embed_model_id")) provider.embed_model_id = doc["embed_model_id"];
    if (doc.contains("api_key_env")) provider.api_key_env = doc["api_key_env"];
    if (doc.contains("timeout_seconds")) {
        provider.timeout_seconds = doc["timeout_seconds"].get<int>();
        if (provider.timeout_seconds <= 0)
            throw ConfigInvalidError("provider.timeout_seconds", "must be positive");
    }
    if (doc.contains("retry")) {
        const json& retry = doc["retry"];
        if (retry.contains("max_attempts")) {
            provider.retry.max_attempts = retry["max_attempts"].get<int>();
            if (provider.retry.max_attempts < 1)
                throw ConfigInvalidError("provider.retry.max_attempts", "must be >= 1");
        }
        if (retry.contains("base_backoff_ms"))
            provider.retry.base_backoff_ms = retry["base_backoff_ms"].get<int>();
        if (retry.contains("jitter")) provider.retry.jitter = retry["jitter"].get<bool>();
    }
}

} // namespace

RunConfig load_config(const std::filesystem::path& config_path) {
    std::ifstream in(config_path);
    if (!in) throw ConfigParseError("cannot open config file: " + config_path.string());

    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigParseError("config is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw ConfigParseError("config root must be a JSON object");

    RunConfig config;
    config.base_dir = std::filesystem::absolute(config_path).parent_path();

    if (!doc.contains("app") || !doc["app"].is_object())
        throw ConfigInvalidError("app", "missing or not an object");
    config.app.name = require_string(doc["app"], "name", "app.name");
    config.app.description = require_string(doc["app"], "description", "app.description");

    if (!doc.contains("scenarios") || !doc["scenarios"].is_array() || doc["scenarios"].empty())
        throw ConfigInvalidError("scenarios", "must be a non-empty array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc["scenarios"].size(); ++i) {
        TaskScenario scenario = parse_scenario(doc["scenarios"][i], config.base_dir, i);
        if (!ids.insert(scenario.id).second)
            throw ConfigInvalidError("scenarios.id", "duplicate scenario id: " + scenario.id);
        config.scenarios.push_back(std::move(scenario));
    }

    if (doc.contains("provider")) parse_provider(doc["provider"], config.provider);

    if (doc.contains("aggregation")) {
        const json& agg = doc["aggregation"];
        if (agg.contains("similarity_threshold")) {
            config.aggregation.similarity_threshold = agg["similarity_threshold"].get<double>();
            if (config.aggregation.similarity_threshold <= 0.0 ||
                config.aggregation.similarity_threshold > 1.0)
                throw ConfigInvalidError("aggregation.similarity_threshold",
                                         "must be in (0, 1]");
        }
        if (agg.contains("embed_recommendations"))
            config.aggregation.embed_recommendations = agg["embed_recommendations"].get<bool>();
    }

    if (doc.contains("evaluation")) {
        const json& ev = doc["evaluation"];
        if (ev.contains("parallelism")) {
            config.evaluation.parallelism = ev["parallelism"].get<int>();
            if (config.evaluation.parallelism < 1)
                throw ConfigInvalidError("evaluation.parallelism", "must be >= 1");
        }
        if (ev.contains("context_limit")) {
            config.evaluation.context_limit = ev["context_limit"].get<std::int64_t>();
            if (config.evaluation.context_limit <= 0)
                throw ConfigInvalidError("evaluation.context_limit", "must be positive");
        }
        if (ev.contains("text_reserve")) {
            config.evaluation.text_reserve = ev["text_reserve"].get<std::int64_t>();
            if (config.evaluation.text_reserve < 0)
                throw ConfigInvalidError("evaluation.text_reserve", "must be >= 0");
        }
    }

    if (doc.contains("report")) {
        const json& rep = doc["report"];
        if (rep.contains("top_k") && !rep["top_k"].is_null()) {
            config.report.top_k = rep["top_k"].get<int>();
            if (*config.report.top_k < 1)
                throw ConfigInvalidError("report.top_k", "must be >= 1");
        }
        if (rep.contains("formats")) {
            config.report.formats.clear();
            for (const auto& fmt : rep["formats"]) {
                const std::string name = fmt.get<std::string>();
                if (name != "json" && name != "markdown")
                    throw ConfigInvalidError("report.formats", "unknown format: " + name);
                config.report.formats.push_back(name);
            }
            if (config.report.formats.empty())
                throw ConfigInvalidError("report.formats", "must name at least one format");
        }
    }

    if (doc.contains("templates_dir") && !doc["templates_dir"].is_null()) {
        config.templates_dir = resolve(config.base_dir, doc["templates_dir"].get<std::string>());
        if (!std::filesystem::is_directory(*config.templates_dir))
            throw ConfigInvalidError("templates_dir",
                                     "not a directory: " + config.templates_dir->string());
    }
    if (doc.contains("heuristics_override") && !doc["heuristics_override"].is_null()) {
        config.heuristics_override =
            resolve(config.base_dir, doc["heuristics_override"].get<std::string>());
        if (!std::filesystem::exists(*config.heuristics_override))
            throw ConfigInvalidError("heuristics_override",
                                     "file not found: " + config.heuristics_override->string());
    }

    config.cache_dir = doc.contains("cache_dir")
                           ? resolve(config.base_dir, doc["cache_dir"].get<std::string>())
                           : config.base_dir / "cache";
    return config;
}

} // namespace uxlens

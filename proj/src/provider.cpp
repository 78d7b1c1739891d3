#include "uxlens/provider.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "uxlens/digest.hpp"
#include "uxlens/errors.hpp"

namespace uxlens {

namespace {

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AttachmentUnreadableError("cannot open attachment: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string base64_encode(std::string_view bytes) {
    static const char* alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const std::uint32_t chunk = (std::uint8_t(bytes[i]) << 16) |
                                    (std::uint8_t(bytes[i + 1]) << 8) | std::uint8_t(bytes[i + 2]);
        out.push_back(alphabet[(chunk >> 18) & 0x3F]);
        out.push_back(alphabet[(chunk >> 12) & 0x3F]);
        out.push_back(alphabet[(chunk >> 6) & 0x3F]);
        out.push_back(alphabet[chunk & 0x3F]);
    }
    const std::size_t rem = bytes.size() - i;
    if (rem == 1) {
        const std::uint32_t chunk = std::uint8_t(bytes[i]) << 16;
        out.push_back(alphabet[(chunk >> 18) & 0x3F]);
        out.push_back(alphabet[(chunk >> 12) & 0x3F]);
        out += "==";
    } else if (rem == 2) {
        const std::uint32_t chunk = (std::uint8_t(bytes[i]) << 16) | (std::uint8_t(bytes[i + 1]) << 8);
        out.push_back(alphabet[(chunk >> 18) & 0x3F]);
        out.push_back(alphabet[(chunk >> 12) & 0x3F]);
        out.push_back(alphabet[(chunk >> 6) & 0x3F]);
        out.push_back('=');
    }
    return out;
}

std::string preview(const std::string& text, std::size_t max_len = 80) {
    if (text.size() <= max_len) return text;
    return text.substr(0, max_len) + "...";
}

bool retryable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

std::vector<EmbeddingVector> vectors_from_cache_bytes(const std::string& bytes,
                                                      std::size_t expected_count) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("corrupt embedding cache entry: " + std::string(e.what()));
    }
    if (!doc.is_array() || doc.size() != expected_count)
        throw AlignmentError("embedding cache entry does not match request size");

    std::vector<EmbeddingVector> out;
    out.reserve(doc.size());
    std::size_t dimension = 0;
    for (const auto& row : doc) {
        EmbeddingVector v;
        v.components = row.get<std::vector<double>>();
        if (out.empty())
            dimension = v.dimension();
        else if (v.dimension() != dimension)
            throw DimensionMismatchError("provider returned ragged embedding vectors");
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

Mode parse_mode(const std::string& name) {
    if (name == "live") return Mode::live;
    if (name == "record") return Mode::record;
    if (name == "replay") return Mode::replay;
    throw ConfigError("unknown mode: " + name + " (expected live|record|replay)");
}

std::string mode_name(Mode mode) {
    switch (mode) {
    case Mode::live: return "live";
    case Mode::record: return "record";
    case Mode::replay: return "replay";
    }
    return "?";
}

std::string request_digest(const ChatRequest& request) {
    nlohmann::json canonical; // nlohmann objects dump with sorted keys
    canonical["kind"] = "chat";
    canonical["model"] = request.model_id;
    canonical["system"] = request.system_prompt;
    canonical["user"] = request.user_prompt;
    canonical["temperature"] = request.temperature;
    canonical["response_format"] =
        request.response_format == ResponseFormat::json ? "json" : "free_text";
    auto attachments = nlohmann::json::array();
    for (const auto& ref : request.attachments) attachments.push_back(sha256_file(ref.path));
    canonical["attachments"] = attachments;
    return sha256_hex(canonical.dump());
}

std::string request_digest(const EmbedRequest& request) {
    nlohmann::json canonical;
    canonical["kind"] = "embed";
    canonical["model"] = request.model_id;
    canonical["texts"] = request.texts;
    return sha256_hex(canonical.dump());
}

std::string embedding_cache_bytes(const std::vector<std::vector<double>>& vectors) {
    nlohmann::json doc = vectors;
    return doc.dump() + "\n";
}

Client::Client(ProviderConfig config, std::shared_ptr<Transport> transport,
               std::shared_ptr<DiskCache> cache, SleepFn sleep)
    : config_(std::move(config)), transport_(std::move(transport)), cache_(std::move(cache)),
      sleep_(std::move(sleep)) {
    if (!sleep_)
        sleep_ = [](int ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
}

std::string Client::api_key() const {
    const char* value = std::getenv(config_.api_key_env.c_str());
    if (value == nullptr || *value == '\0')
        throw CredentialMissingError("environment variable " + config_.api_key_env +
                                     " is not set");
    return value;
}

HttpResponse Client::post_with_retry(const HttpRequest& request) {
    const RetryPolicy& retry = config_.retry;
    thread_local std::mt19937 rng{std::random_device{}()};

    std::string last_error;
    for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
        try {
            ++transport_posts_;
            HttpResponse response = transport_->post_json(request);
            if (response.status >= 200 && response.status < 300) return response;
            if (!retryable_status(response.status))
                throw TransportError("HTTP " + std::to_string(response.status) + " from " +
                                     request.url + ": " + preview(response.body, 200));
            last_error = "HTTP " + std::to_string(response.status);
        } catch (const TransportError& e) {
            if (attempt == retry.max_attempts) throw;
            last_error = e.what();
        }

        if (attempt == retry.max_attempts) break;
        // Exponential backoff, capped; jitter scales by a factor in [0.5, 1.5).
        double delay = static_cast<double>(retry.base_backoff_ms) * double(1u << (attempt - 1));
        delay = std::min(delay, 30000.0);
        if (retry.jitter) {
            std::uniform_real_distribution<double> dist(0.5, 1.5);
            delay *= dist(rng);
        }
        sleep_(static_cast<int>(delay));
    }
    throw TransportError("request to " + request.url + " failed after " +
                         std::to_string(retry.max_attempts) + " attempts: " + last_error);
}

std::string Client::chat_live(const ChatRequest& request, std::optional<TokenUsage>& usage) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& ref : request.attachments) {
        parts.push_back({{"inline_data",
                          {{"mime_type", "video/mp4"},
                           {"data", base64_encode(read_file_bytes(ref.path))}}}});
    }
    parts.push_back({{"text", request.user_prompt}});

    nlohmann::json body = {
        {"contents", nlohmann::json::array({{{"role", "user"}, {"parts", parts}}})},
        {"generationConfig", {{"temperature", request.temperature}}},
    };
    if (request.response_format == ResponseFormat::json)
        body["generationConfig"]["response_mime_type"] = "application/json";
    if (!request.system_prompt.empty())
        body["systemInstruction"] = {
            {"parts", nlohmann::json::array({{{"text", request.system_prompt}}})}};

    HttpRequest http;
    http.url = config_.chat_endpoint + "/models/" + request.model_id + ":generateContent";
    http.headers = {{"x-goog-api-key", api_key()}};
    http.body = body.dump();
    http.timeout_seconds = config_.timeout_seconds;

    const HttpResponse response = post_with_retry(http);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(response.body);
    } catch (const nlohmann::json::parse_error& e) {
        throw TransportError("chat endpoint returned non-JSON body: " + std::string(e.what()));
    }

    if (!doc.contains("candidates") || !doc["candidates"].is_array() || doc["candidates"].empty())
        throw TransportError("chat response has no candidates: " + preview(response.body, 200));

    std::string text;
    for (const auto& part : doc["candidates"][0].value("content", nlohmann::json::object())
                                .value("parts", nlohmann::json::array())) {
        if (part.contains("text")) text += part["text"].get<std::string>();
    }
    if (doc.contains("usageMetadata")) {
        const auto& meta = doc["usageMetadata"];
        usage = TokenUsage{meta.value("promptTokenCount", std::int64_t{0}),
                           meta.value("candidatesTokenCount", std::int64_t{0})};
    }
    return text;
}

ChatResponse Client::chat(const ChatRequest& request, Mode mode) {
    ++chat_calls_;
    if (request.model_id.empty()) throw Error("chat request has empty model_id");
    if (request.temperature < 0.0 || request.temperature > 2.0)
        throw Error("chat temperature out of range [0, 2]");

    if (mode == Mode::live) {
        std::optional<TokenUsage> usage;
        std::string text = chat_live(request, usage);
        return {std::move(text), usage};
    }

    const std::string key = request_digest(request);
    if (auto cached = cache_->get(key)) return {std::move(*cached), std::nullopt};
    if (mode == Mode::replay)
        throw CacheMissError("replay cache has no entry for chat request " + key);

    std::optional<TokenUsage> usage;
    const std::string text = chat_live(request, usage);
    cache_->put(key, text,
                {{"kind", "chat"},
                 {"model", request.model_id},
                 {"user_preview", preview(request.user_prompt)},
                 {"attachments", request.attachments.size()}});
    return {text, usage};
}

std::string Client::embed_live(const EmbedRequest& request) {
    nlohmann::json body = {{"model", request.model_id}, {"input", request.texts}};

    HttpRequest http;
    http.url = config_.embed_endpoint;
    http.headers = {{"Authorization", "Bearer " + api_key()}};
    http.body = body.dump();
    http.timeout_seconds = config_.timeout_seconds;

    const HttpResponse response = post_with_retry(http);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(response.body);
    } catch (const nlohmann::json::parse_error& e) {
        throw TransportError("embedding endpoint returned non-JSON body: " +
                             std::string(e.what()));
    }
    if (!doc.contains("data") || !doc["data"].is_array())
        throw TransportError("embedding response has no data array: " +
                             preview(response.body, 200));
    if (doc["data"].size() != request.texts.size())
        throw AlignmentError("embedding response size " + std::to_string(doc["data"].size()) +
                             " does not match input size " +
                             std::to_string(request.texts.size()));

    std::vector<std::vector<double>> rows;
    rows.reserve(doc["data"].size());
    for (const auto& item : doc["data"])
        rows.push_back(item.value("embedding", std::vector<double>{}));
    return embedding_cache_bytes(rows);
}

std::vector<EmbeddingVector> Client::embed(const std::vector<std::string>& texts, Mode mode) {
    ++embed_calls_;
    if (texts.empty()) throw Error("embed requires a non-empty list of texts");
    for (const auto& t : texts)
        if (t.empty()) throw Error("embed requires non-empty texts");

    const EmbedRequest request{config_.embed_model_id, texts};

    if (mode == Mode::live) return vectors_from_cache_bytes(embed_live(request), texts.size());

    const std::string key = request_digest(request);
    if (auto cached = cache_->get(key)) return vectors_from_cache_bytes(*cached, texts.size());
    if (mode == Mode::replay)
        throw CacheMissError("replay cache has no entry for embed request " + key);

    const std::string bytes = embed_live(request);
    cache_->put(key, bytes,
                {{"kind", "embed"},
                 {"model", request.model_id},
                 {"texts", texts.size()},
                 {"first_text_preview", preview(texts.front())}});
    return vectors_from_cache_bytes(bytes, texts.size());
}

CallStats Client::stats() const {
    return {chat_calls_.load(), embed_calls_.load(), transport_posts_.load()};
}

ChatResponse ClientSession::chat(const ChatRequest& request) {
    ChatRequest filled = request;
    if (filled.model_id.empty()) filled.model_id = client_.config().chat_model_id;
    return client_.chat(filled, mode_);
}

std::vector<EmbeddingVector> ClientSession::embed(const std::vector<std::string>& texts) {
    return client_.embed(texts, mode_);
}

} // namespace uxlens

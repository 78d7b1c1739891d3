#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uxlens/cache.hpp"
#include "uxlens/similarity.hpp"
#include "uxlens/transport.hpp"
#include "uxlens/types.hpp"

namespace uxlens {

enum class Mode { live, record, replay };

Mode parse_mode(const std::string& name); // throws ConfigError on unknown name
std::string mode_name(Mode mode);

enum class ResponseFormat { json, free_text };

struct ChatRequest {
    std::string system_prompt;
    std::string user_prompt;
    std::vector<VideoRef> attachments; // 0 or 1 in this pipeline
    double temperature = 0.0;
    std::string model_id;
    ResponseFormat response_format = ResponseFormat::json;
};

struct TokenUsage {
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
};

struct ChatResponse {
    std::string text;
    std::optional<TokenUsage> usage;
};

struct EmbedRequest {
    std::string model_id;
    std::vector<std::string> texts;
};

struct RetryPolicy {
    int max_attempts = 3;
    int base_backoff_ms = 500;
    bool jitter = true;
};

struct ProviderConfig {
    std::string chat_endpoint = "https://generativelanguage.googleapis.com/v1beta";
    std::string chat_model_id = "gemini-2.0-flash-001";
    std::string embed_endpoint = "http://localhost:8080/v1/embeddings";
    std::string embed_model_id = "all-MiniLM-L6-v2";
    std::string api_key_env = "UXLENS_API_KEY";
    int timeout_seconds = 120;
    RetryPolicy retry;
};

// Stable content digest of a canonicalized request. Attachments contribute
// the digest of their file bytes, not their path.
std::string request_digest(const ChatRequest& request);
std::string request_digest(const EmbedRequest& request);

// On-disk form of an embedding response. Record and replay both parse these
// bytes, so the two modes return bit-identical vectors.
std::string embedding_cache_bytes(const std::vector<std::vector<double>>& vectors);

struct CallStats {
    long chat_calls = 0;      // chat() invocations, any mode
    long embed_calls = 0;     // embed() invocations, any mode
    long transport_posts = 0; // actual network round trips (incl. retries)
};

// Uniform access to the chat and embedding endpoints with retry and a
// record/replay cache. Safe for concurrent use.
class Client {
public:
    using SleepFn = std::function<void(int /*milliseconds*/)>;

    Client(ProviderConfig config, std::shared_ptr<Transport> transport,
           std::shared_ptr<DiskCache> cache, SleepFn sleep = {});

    const ProviderConfig& config() const { return config_; }

    // replay: cached response, byte-identical, no network; throws CacheMissError.
    // record: cached when present, otherwise live call persisted before returning.
    // live:   network only.
    ChatResponse chat(const ChatRequest& request, Mode mode);

    // Output is positionally aligned with `texts`; all vectors share one
    // dimension (DimensionMismatchError otherwise).
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts, Mode mode);

    CallStats stats() const;

private:
    std::string api_key() const; // throws CredentialMissingError
    HttpResponse post_with_retry(const HttpRequest& request);

    std::string chat_live(const ChatRequest& request, std::optional<TokenUsage>& usage);
    std::string embed_live(const EmbedRequest& request);

    ProviderConfig config_;
    std::shared_ptr<Transport> transport_;
    std::shared_ptr<DiskCache> cache_;
    SleepFn sleep_;
    std::atomic<long> chat_calls_{0};
    std::atomic<long> embed_calls_{0};
    std::atomic<long> transport_posts_{0};
};

// Narrow interface the pipeline stages talk to; lets tests substitute
// scripted model behavior.
class ModelSession {
public:
    virtual ~ModelSession() = default;
    virtual ChatResponse chat(const ChatRequest& request) = 0;
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
};

// Binds a Client to one mode and fills in the configured model ids.
class ClientSession : public ModelSession {
public:
    ClientSession(Client& client, Mode mode) : client_(client), mode_(mode) {}

    ChatResponse chat(const ChatRequest& request) override;
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;

private:
    Client& client_;
    Mode mode_;
};

} // namespace uxlens

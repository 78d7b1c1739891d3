#pragma once

// Shared test doubles and helpers for the unit and acceptance suites.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uxlens/errors.hpp"
#include "uxlens/provider.hpp"
#include "uxlens/transport.hpp"

namespace uxtest {

inline std::filesystem::path fixtures_dir() {
#ifdef UXLENS_SOURCE_DIR
    return std::filesystem::path(UXLENS_SOURCE_DIR) / "tests" / "fixtures";
#else
    return std::filesystem::path("tests/fixtures");
#endif
}

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        const auto name = "uxlens-test-" + std::to_string(rd()) + "-" +
                          std::to_string(counter.fetch_add(1));
        path_ = std::filesystem::temp_directory_path() / name;
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Model session scripted with plain functions; counts invocations.
class FnSession : public uxlens::ModelSession {
public:
    std::function<uxlens::ChatResponse(const uxlens::ChatRequest&)> chat_fn;
    std::function<std::vector<uxlens::EmbeddingVector>(const std::vector<std::string>&)> embed_fn;
    std::atomic<int> chat_count{0};
    std::atomic<int> embed_count{0};

    uxlens::ChatResponse chat(const uxlens::ChatRequest& request) override {
        ++chat_count;
        if (!chat_fn) throw uxlens::Error("unexpected chat call in test");
        return chat_fn(request);
    }
    std::vector<uxlens::EmbeddingVector> embed(const std::vector<std::string>& texts) override {
        ++embed_count;
        if (!embed_fn) throw uxlens::Error("unexpected embed call in test");
        return embed_fn(texts);
    }
};

// Transport returning a fixed script of responses, in order.
class ScriptedTransport : public uxlens::Transport {
public:
    explicit ScriptedTransport(std::vector<uxlens::HttpResponse> responses)
        : responses_(std::move(responses)) {}

    uxlens::HttpResponse post_json(const uxlens::HttpRequest& request) override {
        seen.push_back(request);
        if (next_ >= responses_.size())
            throw uxlens::TransportError("scripted transport exhausted");
        return responses_[next_++];
    }

    std::vector<uxlens::HttpRequest> seen;

private:
    std::vector<uxlens::HttpResponse> responses_;
    std::size_t next_ = 0;
};

// Fails every call; proves a code path performs no network access.
class CountingTransport : public uxlens::Transport {
public:
    uxlens::HttpResponse post_json(const uxlens::HttpRequest&) override {
        ++calls;
        throw uxlens::TransportError("network access attempted in an offline test");
    }
    std::atomic<long> calls{0};
};

// Deterministic random embedding vectors for property tests.
inline std::vector<uxlens::EmbeddingVector> random_vectors(std::mt19937& rng, std::size_t count,
                                                           std::size_t dimension) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<uxlens::EmbeddingVector> vectors(count);
    for (auto& v : vectors) {
        v.components.resize(dimension);
        bool nonzero = false;
        do {
            nonzero = false;
            for (auto& c : v.components) {
                c = dist(rng);
                nonzero = nonzero || c != 0.0;
            }
        } while (!nonzero);
    }
    return vectors;
}

} // namespace uxtest

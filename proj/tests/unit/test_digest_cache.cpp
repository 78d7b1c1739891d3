#include <doctest.h>

#include "support.hpp"
#include "uxlens/digest.hpp"
#include "uxlens/errors.hpp"
#include "uxlens/provider.hpp"

using namespace uxlens;

TEST_CASE("sha256 matches the reference vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

    // streaming and one-shot agree across block boundaries
    const std::string payload(150, 'x');
    Sha256 h;
    h.update(payload.substr(0, 63));
    h.update(payload.substr(63, 2));
    h.update(payload.substr(65));
    CHECK(h.hex_digest() == sha256_hex(payload));
}

TEST_CASE("chat request digests canonicalize") {
    uxtest::TempDir tmp;
    const auto video_a = tmp.path() / "a.mp4";
    const auto video_b = tmp.path() / "sub" / "b.mp4";
    uxtest::write_file(video_a, "same bytes");
    uxtest::write_file(video_b, "same bytes");

    ChatRequest request;
    request.system_prompt = "system";
    request.user_prompt = "user";
    request.model_id = "model-x";
    request.attachments = {{video_a, "a.mp4", 3.0}};

    ChatRequest moved = request;
    moved.attachments = {{video_b, "elsewhere/b.mp4", 3.0}};
    // same video content at a new path -> same key
    CHECK(request_digest(request) == request_digest(moved));

    ChatRequest changed = request;
    changed.user_prompt = "user!";
    CHECK(request_digest(changed) != request_digest(request));

    ChatRequest other_model = request;
    other_model.model_id = "model-y";
    CHECK(request_digest(other_model) != request_digest(request));

    ChatRequest missing = request;
    missing.attachments = {{tmp.path() / "gone.mp4", "gone.mp4", 3.0}};
    CHECK_THROWS_AS(request_digest(missing), AttachmentUnreadableError);
}

TEST_CASE("prompt fuzzing produces distinct digests") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> len(1, 60);
    std::uniform_int_distribution<int> byte('a', 'z');
    std::set<std::string> keys;
    for (int trial = 0; trial < 300; ++trial) {
        ChatRequest request;
        request.model_id = "m";
        std::string prompt;
        const int n = len(rng);
        for (int i = 0; i < n; ++i) prompt.push_back(static_cast<char>(byte(rng)));
        prompt += ":" + std::to_string(trial); // force uniqueness of inputs
        request.user_prompt = prompt;
        keys.insert(request_digest(request));
    }
    CHECK(keys.size() == 300);
}

TEST_CASE("embed request digest depends on model and texts") {
    const EmbedRequest a{"m1", {"x", "y"}};
    const EmbedRequest b{"m1", {"x", "y"}};
    const EmbedRequest c{"m2", {"x", "y"}};
    const EmbedRequest d{"m1", {"y", "x"}};
    CHECK(request_digest(a) == request_digest(b));
    CHECK(request_digest(a) != request_digest(c));
    CHECK(request_digest(a) != request_digest(d));
}

TEST_CASE("disk cache stores and retrieves entries with sidecars") {
    uxtest::TempDir tmp;
    DiskCache cache(tmp.path() / "cache");

    CHECK(!cache.contains("k1"));
    CHECK(!cache.get("k1").has_value());

    cache.put("k1", "response bytes", {{"kind", "chat"}});
    CHECK(cache.contains("k1"));
    CHECK(cache.get("k1") == std::string("response bytes"));
    CHECK(std::filesystem::exists(tmp.path() / "cache" / "k1.meta.json"));

    // last writer wins; values for one key are identical by construction
    cache.put("k1", "response bytes", {{"kind", "chat"}});
    CHECK(cache.get("k1") == std::string("response bytes"));
}

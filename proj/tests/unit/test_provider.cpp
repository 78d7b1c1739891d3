#include <doctest.h>

#include <cstdlib>

#include <nlohmann/json.hpp>

#include "support.hpp"
#include "uxlens/errors.hpp"
#include "uxlens/provider.hpp"

using namespace uxlens;

namespace {

struct EnvVar {
    EnvVar(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
    ~EnvVar() { unsetenv(name_); }
    const char* name_;
};

ProviderConfig test_config(bool jitter = false) {
    ProviderConfig config;
    config.api_key_env = "UXLENS_TEST_KEY";
    config.retry = {3, 10, jitter};
    return config;
}

std::string chat_body(const std::string& text) {
    return nlohmann::json{
        {"candidates",
         nlohmann::json::array(
             {{{"content", {{"parts", nlohmann::json::array({{{"text", text}}})}}}}})},
        {"usageMetadata", {{"promptTokenCount", 5}, {"candidatesTokenCount", 2}}}}
        .dump();
}

std::string embed_body(const std::vector<std::vector<double>>& vectors) {
    nlohmann::json data = nlohmann::json::array();
    for (const auto& v : vectors) data.push_back({{"embedding", v}});
    return nlohmann::json{{"data", data}}.dump();
}

ChatRequest simple_request() {
    ChatRequest request;
    request.system_prompt = "sys";
    request.user_prompt = "user";
    request.model_id = "test-model";
    return request;
}

} // namespace

TEST_CASE("record retries transient failures with non-decreasing backoff") {
    EnvVar key("UXLENS_TEST_KEY", "secret");
    uxtest::TempDir tmp;
    auto transport = std::make_shared<uxtest::ScriptedTransport>(std::vector<HttpResponse>{
        {500, "oops"},
        {503, "busy"},
        {200, chat_body("recovered")},
    });
    auto cache = std::make_shared<DiskCache>(tmp.path() / "cache");
    std::vector<int> delays;
    Client client(test_config(), transport, cache, [&](int ms) { delays.push_back(ms); });

    const ChatResponse response = client.chat(simple_request(), Mode::record);
    CHECK(response.text == "recovered");
    REQUIRE(response.usage.has_value());
    CHECK(response.usage->input_tokens == 5);
    CHECK(transport->seen.size() == 3);
    REQUIRE(delays.size() == 2);
    CHECK(delays[0] <= delays[1]); // exponential without jitter

    // the response was persisted before returning: a second record call
    // replays it without touching the network
    const ChatResponse again = client.chat(simple_request(), Mode::record);
    CHECK(again.text == "recovered");
    CHECK(transport->seen.size() == 3);
}

TEST_CASE("attempts never exceed the retry budget") {
    EnvVar key("UXLENS_TEST_KEY", "secret");
    uxtest::TempDir tmp;
    auto transport = std::make_shared<uxtest::ScriptedTransport>(std::vector<HttpResponse>{
        {500, "a"}, {500, "b"}, {500, "c"}, {500, "never reached"}});
    auto cache = std::make_shared<DiskCache>(tmp.path() / "cache");
    Client client(test_config(), transport, cache, [](int) {});

    CHECK_THROWS_AS(client.chat(simple_request(), Mode::live), TransportError);
    CHECK(transport->seen.size() == 3); // == max_attempts
}

TEST_CASE("non-retryable statuses fail immediately") {
    EnvVar key("UXLENS_TEST_KEY", "secret");
    uxtest::TempDir tmp;
    auto transport = std::make_shared<uxtest::ScriptedTransport>(
        std::vector<HttpResponse>{{400, "bad request"}});
    auto cache = std::make_shared<DiskCache>(tmp.path() / "cache");
    Client client(test_config(), transport, cache, [](int) {});

    CHECK_THROWS_AS(client.chat(simple_request(), Mode::live), TransportError);
    CHECK(transport->seen.size() == 1);
}

TEST_CASE("replay is byte-identical and never reaches the network") {
    EnvVar key("UXLENS_TEST_KEY", "secret");
    uxtest::TempDir tmp;
    auto cache = std::make_shared<DiskCache>(tmp.path() / "cache");
    {
        auto transport = std::make_shared<uxtest::ScriptedTransport>(
            std::vector<HttpResponse>{{200, chat_body("the recorded text\nwith lines")}});
        Client recorder(test_config(), transport, cache, [](int) {});
        recorder.chat(simple_request(), Mode::record);
    }

    auto counting = std::make_shared<uxtest::CountingTransport>();
    Client client(test_config(), counting, cache, [](int) {});
    const ChatResponse replayed = client.chat(simple_request(), Mode::replay);
    CHECK(replayed.text == "the recorded text\nwith lines");
    CHECK(counting->calls == 0);

    ChatRequest unknown = simple_request();
    unknown.user_prompt = "never recorded";
    CHECK_THROWS_AS(client.chat(unknown, Mode::replay), CacheMissError);
    CHECK(counting->calls == 0);
}

TEST_CASE("missing credential fails live calls but not replay hits") {
    uxtest::TempDir tmp;
    auto cache = std::make_shared<DiskCache>(tmp.path() / "cache");
    {
        EnvVar key("UXLENS_TEST_KEY", "secret");
        auto transport = std::make_shared<uxtest::ScriptedTransport>(
            std::vector<HttpResponse>{{200, chat_body("cached")}});
        Client recorder(test_config(), transport, cache, [](int) {});
        recorder.chat(simple_request(), Mode::record);
    }

    unsetenv("UXLENS_TEST_KEY");
    auto counting = std::make_shared<uxtest::CountingTransport>();
    Client client(test_config(), counting, cache, [](int) {});
    CHECK(client.chat(simple_request(), Mode::replay).text == "cached");

    ChatRequest fresh = simple_request();
    fresh.user_prompt = "needs the network";
    CHECK_THROWS_AS(client.chat(fresh, Mode::record), CredentialMissingError);
    CHECK_THROWS_AS(client.chat(fresh, Mode::live), CredentialMissingError);
}

TEST_CASE("chat wire format carries context, video, and configuration") {
    EnvVar key("UXLENS_TEST_KEY", "secret");
    uxtest::TempDir tmp;
    const auto video = tmp.path() / "clip.mp4";
    uxtest::write_file(video, "AB");

    auto transport = std::make_shared<uxtest::ScriptedTransport>(
        std::vector<HttpResponse>{{200, chat_body("ok")}});
    auto cache = std::make_shared<DiskCache>(tmp.path() / "cache");
    Client client(test_config(), transport, cache, [](int) {});

    ChatRequest request = simple_request();
    request.attachments = {{video, "clip.mp4", 2.0}};
    client.chat(request, Mode::live);

    REQUIRE(transport->seen.size() == 1);
    const HttpRequest& sent = transport->seen.front();
    CHECK(sent.url.find("/models/test-model:generateContent") != std::string::npos);
    REQUIRE(sent.headers.size() == 1);
    CHECK(sent.headers.front().first == "x-goog-api-key");
    CHECK(sent.headers.front().second == "secret");

    const auto body = nlohmann::json::parse(sent.body);
    CHECK(body["systemInstruction"]["parts"][0]["text"] == "sys");
    CHECK(body["generationConfig"]["temperature"] == 0.0);
    CHECK(body["generationConfig"]["response_mime_type"] == "application/json");
    const auto& parts = body["contents"][0]["parts"];
    REQUIRE(parts.size() == 2);
    CHECK(parts[0]["inline_data"]["mime_type"] == "video/mp4");
    CHECK(parts[0]["inline_data"]["data"] == "QUI="); // base64("AB")
    CHECK(parts[1]["text"] == "user");
}

TEST_CASE("embed aligns output with input and validates shapes") {
    EnvVar key("UXLENS_TEST_KEY", "secret");
    uxtest::TempDir tmp;
    auto cache = std::make_shared<DiskCache>(tmp.path() / "cache");

    SUBCASE("aligned vectors") {
        auto transport = std::make_shared<uxtest::ScriptedTransport>(
            std::vector<HttpResponse>{{200, embed_body({{1, 0, 0}, {0, 1, 0}})}});
        Client client(test_config(), transport, cache, [](int) {});
        const auto vectors = client.embed({"a", "b"}, Mode::record);
        REQUIRE(vectors.size() == 2);
        CHECK(vectors[0].dimension() == 3);
        CHECK(vectors[1].dimension() == 3);

        const auto body = nlohmann::json::parse(transport->seen.front().body);
        CHECK(body["model"] == "all-MiniLM-L6-v2");
        CHECK(body["input"] == nlohmann::json::array({"a", "b"}));
        CHECK(transport->seen.front().headers.front().first == "Authorization");
        CHECK(transport->seen.front().headers.front().second == "Bearer secret");

        // repeat embed of identical texts replays the recorded vectors
        auto counting = std::make_shared<uxtest::CountingTransport>();
        Client replayer(test_config(), counting, cache, [](int) {});
        const auto replayed = replayer.embed({"a", "b"}, Mode::replay);
        CHECK(replayed.size() == 2);
        CHECK(replayed[0].components == vectors[0].components);
        CHECK(replayed[1].components == vectors[1].components);
        CHECK(counting->calls == 0);
    }

    SUBCASE("ragged vectors are rejected") {
        auto transport = std::make_shared<uxtest::ScriptedTransport>(
            std::vector<HttpResponse>{{200, embed_body({{1, 0, 0}, {0, 1}})}});
        Client client(test_config(), transport, cache, [](int) {});
        CHECK_THROWS_AS(client.embed({"a", "b"}, Mode::live), DimensionMismatchError);
    }

    SUBCASE("count mismatch is an alignment error") {
        auto transport = std::make_shared<uxtest::ScriptedTransport>(
            std::vector<HttpResponse>{{200, embed_body({{1, 0, 0}})}});
        Client client(test_config(), transport, cache, [](int) {});
        CHECK_THROWS_AS(client.embed({"a", "b"}, Mode::live), AlignmentError);
    }

    SUBCASE("unrecorded texts miss in replay") {
        Client client(test_config(), std::make_shared<uxtest::CountingTransport>(), cache,
                      [](int) {});
        CHECK_THROWS_AS(client.embed({"unseen"}, Mode::replay), CacheMissError);
    }

    SUBCASE("empty input is rejected") {
        Client client(test_config(), std::make_shared<uxtest::CountingTransport>(), cache,
                      [](int) {});
        CHECK_THROWS_AS(client.embed({}, Mode::replay), Error);
    }
}

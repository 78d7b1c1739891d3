#ifdef UXLENS_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "uxlens/errors.hpp"
#include "uxlens/transport.hpp"

namespace uxlens {

namespace {

// Splits an absolute URL into scheme://host[:port] and path?query.
std::pair<std::string, std::string> split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw TransportError("endpoint is not an absolute URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport : public Transport {
public:
    HttpResponse post_json(const HttpRequest& request) override {
        const auto [origin, path] = split_url(request.url);
#ifndef UXLENS_HAVE_OPENSSL
        if (origin.rfind("https://", 0) == 0)
            throw TransportError("built without TLS support, cannot reach " + origin);
#endif
        httplib::Client client(origin);
        client.set_connection_timeout(request.timeout_seconds, 0);
        client.set_read_timeout(request.timeout_seconds, 0);
        client.set_write_timeout(request.timeout_seconds, 0);

        httplib::Headers headers;
        for (const auto& [name, value] : request.headers) headers.emplace(name, value);

        auto result = client.Post(path, headers, request.body, "application/json");
        if (!result)
            throw TransportError("HTTP POST to " + request.url +
                                 " failed: " + httplib::to_string(result.error()));
        return {result->status, result->body};
    }
};

} // namespace

std::unique_ptr<Transport> make_http_transport() {
    return std::make_unique<HttplibTransport>();
}

} // namespace uxlens

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace uxlens {

struct HttpRequest {
    std::string url;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body; // JSON payload
    int timeout_seconds = 120;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

// One-shot JSON-over-HTTP POST. Implementations throw TransportError on
// connection-level failures; HTTP error statuses are returned, not thrown.
class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpResponse post_json(const HttpRequest& request) = 0;
};

// cpp-httplib-backed implementation. HTTPS support is compiled in when the
// build finds OpenSSL.
std::unique_ptr<Transport> make_http_transport();

} // namespace uxlens

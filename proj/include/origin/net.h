#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace origin {

enum class HttpMethod { Get, Post, Put, Delete };

std::string_view http_method_name(HttpMethod method);  // "GET", "POST", ...
std::optional<HttpMethod> http_method_from_name(std::string_view name);

struct TransportRequest {
    HttpMethod method = HttpMethod::Get;
    std::string url;
    std::optional<std::string> body;  // UTF-8 JSON document

    bool operator==(const TransportRequest&) const = default;
};

struct TransportResponse {
    int status = 0;  // 0 means the request never completed
};

/// Blocking request/response. Implementations report every failure as a
/// status; they do not throw.
class Transport {
public:
    virtual ~Transport() = default;
    virtual TransportResponse execute(const TransportRequest& request) = 0;
};

struct TransportRule {
    std::optional<HttpMethod> method;
    std::optional<std::string> url_prefix;
    int status = 200;
};

/// First matching rule wins; no match answers `default_status`.
struct TransportScript {
    std::vector<TransportRule> rules;
    int default_status = 200;

    int status_for(const TransportRequest& request) const;
};

/// `{"rules":[{"match":{"method":"POST","url_prefix":"http://"},"status":200}]}`.
/// Throws FormatError.
TransportScript parse_transport_script(std::string_view text);

class MockTransport final : public Transport {
public:
    MockTransport() = default;
    explicit MockTransport(TransportScript script) : script_(std::move(script)) {}

    TransportResponse execute(const TransportRequest& request) override;

    const std::vector<TransportRequest>& recorded_calls() const { return recorded_; }

private:
    TransportScript script_;
    std::vector<TransportRequest> recorded_;
};

/// Live HTTP(S) client. Unreachable hosts, malformed URLs and timeouts all
/// come back as status 0.
class HttpTransport final : public Transport {
public:
    explicit HttpTransport(std::chrono::milliseconds timeout = std::chrono::seconds(10)) : timeout_(timeout) {}

    TransportResponse execute(const TransportRequest& request) override;

private:
    std::chrono::milliseconds timeout_;
};

} // namespace origin

#include "origin/net.h"

#include <regex>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include "origin/error.h"

namespace origin {

std::string_view http_method_name(HttpMethod method) {
    switch (method) {
        case HttpMethod::Get: return "GET";
        case HttpMethod::Post: return "POST";
        case HttpMethod::Put: return "PUT";
        case HttpMethod::Delete: return "DELETE";
    }
    return "?";
}

std::optional<HttpMethod> http_method_from_name(std::string_view name) {
    for (HttpMethod m : {HttpMethod::Get, HttpMethod::Post, HttpMethod::Put, HttpMethod::Delete}) {
        if (http_method_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

int TransportScript::status_for(const TransportRequest& request) const {
    for (const TransportRule& rule : rules) {
        if (rule.method && *rule.method != request.method) {
            continue;
        }
        if (rule.url_prefix && request.url.rfind(*rule.url_prefix, 0) != 0) {
            continue;
        }
        return rule.status;
    }
    return default_status;
}

TransportScript parse_transport_script(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(1, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array()) {
        throw FormatError(1, "transport script must be an object with a \"rules\" array");
    }
    TransportScript script;
    int index = 0;
    for (const json& entry : doc["rules"]) {
        const std::string where = "rule " + std::to_string(index++);
        if (!entry.is_object() || !entry.contains("status") || !entry["status"].is_number_integer()) {
            throw FormatError(1, where + ": needs an integer \"status\"");
        }
        TransportRule rule;
        rule.status = entry["status"].get<int>();
        if (rule.status < 100 || rule.status > 599) {
            throw FormatError(1, where + ": status must be in 100..599");
        }
        if (entry.contains("match")) {
            const json& match = entry["match"];
            if (!match.is_object()) {
                throw FormatError(1, where + ": \"match\" must be an object");
            }
            if (match.contains("method")) {
                if (!match["method"].is_string()) {
                    throw FormatError(1, where + ": method must be a string");
                }
                rule.method = http_method_from_name(match["method"].get<std::string>());
                if (!rule.method) {
                    throw FormatError(1, where + ": unknown method " + match["method"].get<std::string>());
                }
            }
            if (match.contains("url_prefix")) {
                if (!match["url_prefix"].is_string()) {
                    throw FormatError(1, where + ": url_prefix must be a string");
                }
                rule.url_prefix = match["url_prefix"].get<std::string>();
            }
        }
        script.rules.push_back(std::move(rule));
    }
    return script;
}

TransportResponse MockTransport::execute(const TransportRequest& request) {
    recorded_.push_back(request);
    return TransportResponse{script_.status_for(request)};
}

TransportResponse HttpTransport::execute(const TransportRequest& request) {
    static const std::regex kUrl(R"(^(https?://[^/?#]+)([^#]*))", std::regex::icase);
    std::smatch m;
    if (!std::regex_search(request.url, m, kUrl)) {
        return TransportResponse{0};
    }
    const std::string origin = m[1].str();
    std::string path = m[2].str();
    if (path.empty()) {
        path = "/";
    }

    try {
        httplib::Client client(origin);
        if (!client.is_valid()) {
            return TransportResponse{0};
        }
        client.set_connection_timeout(timeout_);
        client.set_read_timeout(timeout_);
        client.set_write_timeout(timeout_);

        httplib::Request req;
        req.method = std::string(http_method_name(request.method));
        req.path = path;
        if (request.body) {
            req.body = *request.body;
            req.set_header("Content-Type", "application/json; charset=utf-8");
        }
        httplib::Result res = client.send(req);
        if (!res) {
            return TransportResponse{0};
        }
        return TransportResponse{res->status};
    } catch (const std::exception&) {
        return TransportResponse{0};
    }
}

} // namespace origin

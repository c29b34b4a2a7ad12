#include "ods/service.hpp"

#include <regex>

#include <httplib.h>

#include "ods/codec.hpp"
#include "ods/error.hpp"
#include "ods/validation.hpp"

namespace ods {

using nlohmann::ordered_json;

namespace {

std::string_view issue_code(ParseError::Kind kind) {
    switch (kind) {
        case ParseError::Kind::Syntax: return "syntax-error";
        case ParseError::Kind::DuplicateKey: return "duplicate-key";
        case ParseError::Kind::MissingKey: return "missing-key";
        case ParseError::Kind::WrongKind: return "wrong-kind";
        case ParseError::Kind::InvalidValue: return "invalid-value";
    }
    return "syntax-error";
}

ordered_json parse_issue(const ParseError& e, const std::string& prefix = {}) {
    ordered_json issue = ordered_json::object();
    issue["pointer"] = prefix + e.pointer();
    issue["severity"] = "error";
    issue["code"] = issue_code(e.kind());
    issue["message"] = e.what();
    return ordered_json::array({issue});
}

ApiResponse ok(std::string body) { return ApiResponse{200, "application/json; charset=utf-8", std::move(body)}; }

}  // namespace

Api::Api(ServiceConfig config) : config_(std::move(config)) {}

ApiResponse Api::error(int status, std::string_view code, std::string_view message, const ordered_json& issues) {
    ordered_json body = ordered_json::object();
    body["status"] = status;
    body["code"] = code;
    body["message"] = message;
    if (!issues.is_null()) body["issues"] = issues;
    return ApiResponse{status, "application/json; charset=utf-8", canonical_text(body)};
}

ApiResponse Api::get_template() const {
    return ok(serialize_datasheet(new_template("new-dataset", "New dataset")));
}

ApiResponse Api::infer(std::string_view file_name, std::string_view bytes) const {
    if (bytes.size() > config_.inference.maxBytes) {
        return error(413, "oversize",
                     "upload is " + std::to_string(bytes.size()) + " bytes; the limit is " +
                         std::to_string(config_.inference.maxBytes));
    }
    try {
        auto result = infer_resource(file_name.empty() ? "upload" : file_name, bytes, config_.inference);
        return ok(serialize_resource(result.resource));
    } catch (const InvalidArgument& e) {
        return error(e.code() == "oversize" ? 413 : 400, e.code(), e.what());
    }
}

ApiResponse Api::validate(std::string_view body) const {
    try {
        return ok(serialize_report(validate_datasheet(parse_datasheet(body))));
    } catch (const ParseError& e) {
        return error(400, "bad-datasheet", e.what(), parse_issue(e));
    }
}

ApiResponse Api::evaluate(std::string_view body) const {
    nlohmann::json request;
    try {
        request = parse_json_strict(body);
    } catch (const ParseError& e) {
        return error(400, "malformed-json", e.what(), parse_issue(e));
    }
    if (!request.is_object() || !request.contains("datasheet")) {
        return error(400, "bad-request", "body must be an object with a \"datasheet\" member");
    }
    Datasheet sheet;
    try {
        sheet = datasheet_from_json(request["datasheet"]);
    } catch (const ParseError& e) {
        return error(400, "bad-datasheet", e.what(), parse_issue(e, "/datasheet"));
    }
    std::optional<Policy> policy = config_.policy;
    if (request.contains("policy") && !request["policy"].is_null()) {
        try {
            policy = policy_from_json(request["policy"]);
        } catch (const ParseError& e) {
            return error(400, "bad-policy", e.what(), parse_issue(e, "/policy"));
        }
    }
    if (!policy) return error(400, "no-policy", "no policy in the request and none configured on the server");
    return ok(serialize_verdict(evaluate_policy(sheet, *policy)));
}

std::string_view builtin_index_html() noexcept {
    return R"(<!doctype html>
<html lang="en">
<head><meta charset="utf-8"><title>Open Datasheets</title></head>
<body>
<h1>Open Datasheets service</h1>
<p>No wizard assets are configured. Start the service with <code>--assets DIR</code> to serve them.</p>
<ul>
<li><code>GET /api/v1/template</code></li>
<li><code>POST /api/v1/infer</code> (multipart, field <code>file</code>)</li>
<li><code>POST /api/v1/validate</code></li>
<li><code>POST /api/v1/evaluate</code></li>
</ul>
</body>
</html>
)";
}

struct Server::Impl {
    explicit Impl(ServiceConfig config) : api(std::move(config)) {}

    Api api;
    httplib::Server http;
    int port = 0;
};

namespace {

void send(httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.contentType);
}

const std::regex& local_origin() {
    static const std::regex re(R"(^https?://(localhost|127\.0\.0\.1|\[::1\])(:[0-9]+)?$)");
    return re;
}

}  // namespace

Server::Server(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
    auto& http = impl_->http;
    const Api& api = impl_->api;
    const auto& cfg = api.config();

    // Leave headroom for multipart framing; Api::infer enforces the exact cap.
    http.set_payload_max_length(static_cast<std::size_t>(cfg.inference.maxBytes) + 1024 * 1024);

    if (cfg.assetsDir) {
        if (!http.set_mount_point("/", cfg.assetsDir->string())) {
            throw Error("assets directory " + cfg.assetsDir->string() + " does not exist");
        }
    } else {
        auto index = [](const httplib::Request&, httplib::Response& res) {
            res.set_content(std::string(builtin_index_html()), "text/html; charset=utf-8");
        };
        http.Get("/", index);
        http.Get("/index.html", index);
    }

    http.Get("/api/v1/template", [&api](const httplib::Request&, httplib::Response& res) {
        send(res, api.get_template());
    });
    http.Post("/api/v1/infer", [&api](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_file("file")) {
            send(res, Api::error(400, "missing-file", "expected a multipart upload with a \"file\" field"));
            return;
        }
        const auto file = req.get_file_value("file");
        send(res, api.infer(file.filename, file.content));
    });
    http.Post("/api/v1/validate", [&api](const httplib::Request& req, httplib::Response& res) {
        send(res, api.validate(req.body));
    });
    http.Post("/api/v1/evaluate", [&api](const httplib::Request& req, httplib::Response& res) {
        send(res, api.evaluate(req.body));
    });
    http.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    http.set_post_routing_handler([](const httplib::Request& req, httplib::Response& res) {
        const auto origin = req.get_header_value("Origin");
        if (!origin.empty() && std::regex_match(origin, local_origin())) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
            res.set_header("Vary", "Origin");
        }
    });

    http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
        ApiResponse r;
        switch (res.status) {
            case 404: r = Api::error(404, "not-found", "no route for " + req.method + " " + req.path); break;
            case 413: r = Api::error(413, "oversize", "request body exceeds the configured limit"); break;
            case 400: r = Api::error(400, "bad-request", "the request could not be read"); break;
            default: r = Api::error(500, "internal-error", "unexpected server error"); break;
        }
        send(res, r);
        return httplib::Server::HandlerResponse::Handled;
    });
    http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "unexpected server error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        send(res, Api::error(500, "internal-error", what));
    });
}

Server::~Server() { stop(); }

int Server::bind() {
    const auto& cfg = impl_->api.config();
    if (cfg.port == 0) {
        impl_->port = impl_->http.bind_to_any_port(cfg.host);
    } else if (impl_->http.bind_to_port(cfg.host, cfg.port)) {
        impl_->port = cfg.port;
    } else {
        impl_->port = -1;
    }
    if (impl_->port <= 0) throw Error("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
    return impl_->port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_) impl_->http.stop();
}

}  // namespace ods

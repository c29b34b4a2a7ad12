#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ods/inference.hpp"
#include "ods/policy.hpp"

namespace ods {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;                                   // 0 picks a free port
    std::optional<Policy> policy;                      // fallback for /evaluate
    std::optional<std::filesystem::path> assetsDir;    // wizard build output
    InferenceConfig inference;                         // maxBytes doubles as the upload cap
};

struct ApiResponse {
    int status = 200;
    std::string contentType = "application/json; charset=utf-8";
    std::string body;
};

/// Endpoint logic without the transport. Every method is const and touches no
/// shared state, so one instance serves concurrent requests.
class Api {
public:
    explicit Api(ServiceConfig config);

    ApiResponse get_template() const;
    ApiResponse infer(std::string_view file_name, std::string_view bytes) const;
    ApiResponse validate(std::string_view body) const;
    ApiResponse evaluate(std::string_view body) const;

    /// ApiError body: status, code, message, issues (when given).
    static ApiResponse error(int status, std::string_view code, std::string_view message,
                             const nlohmann::ordered_json& issues = nullptr);

    const ServiceConfig& config() const noexcept { return config_; }

private:
    ServiceConfig config_;
};

/// Page served at "/" when no wizard assets are configured.
std::string_view builtin_index_html() noexcept;

/// HTTP/1.1 front end for Api, plus static assets.
class Server {
public:
    explicit Server(ServiceConfig config);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds the socket; returns the bound port. Throws Error on failure.
    int bind();
    /// Serves until stop(); call after bind().
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ods

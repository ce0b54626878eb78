#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "luxforge/error.hpp"
#include "luxforge/workspace.hpp"

namespace luxforge {

struct Response {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// Transport-free request router for the workbench HTTP API.
/// Thread-safe: concurrent calls share the workspace store.
class Service {
public:
    /// When `autosave_dir` is set, the workspace is persisted there after every mutation.
    explicit Service(Workspace& workspace, std::optional<std::filesystem::path> autosave_dir = std::nullopt);

    Response handle(std::string_view method, std::string_view path, std::string_view body) const;

private:
    void autosave() const;

    Workspace& workspace_;
    std::optional<std::filesystem::path> autosave_dir_;
};

/// HTTP status used for an engine error: 404 NotFound, 422 NoApplicablePattern,
/// 500 IoFailure, 400 otherwise.
int status_for(ErrorCode code);

/// HTTP/1.1 front end for a Service.
class HttpServer {
public:
    explicit HttpServer(const Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Blocks serving requests until `stop` is called. Returns false when the port cannot be bound.
    bool listen(const std::string& host, int port);

    /// Serves on a background thread; port 0 picks a free port. Returns the bound port or -1.
    int start(const std::string& host = "127.0.0.1", int port = 0);

    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace luxforge

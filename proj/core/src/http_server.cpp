#include <thread>

#include <httplib.h>

#include "luxforge/service.hpp"

namespace luxforge {

struct HttpServer::Impl {
    explicit Impl(const Service& s) : service(s) {
        const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
            const Response r = service.handle(req.method, req.path, req.body);
            res.status = r.status;
            res.set_content(r.body, r.content_type);
        };
        const char* pattern = R"(/.*)";
        server.Get(pattern, dispatch);
        server.Post(pattern, dispatch);
        server.Patch(pattern, dispatch);
        server.Put(pattern, dispatch);
        server.Delete(pattern, dispatch);
    }

    const Service& service;
    httplib::Server server;
    std::thread worker;
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpServer::start(const std::string& host, int port) {
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) return -1;
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void HttpServer::stop() {
    impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace luxforge

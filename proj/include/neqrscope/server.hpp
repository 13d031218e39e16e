#ifndef NEQRSCOPE_SERVER_HPP
#define NEQRSCOPE_SERVER_HPP

#include <memory>
#include <string>
#include <thread>
#include <utility>

#include <httplib.h>

#include "neqrscope/api.hpp"

namespace neqrscope::api {

inline constexpr const char* kPlaceholderPage =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>neqrscope</title></head><body>"
    "<h1>neqrscope</h1><p>No UI assets mounted. API endpoints:</p><ul>"
    "<li><a href=\"/api/meta\">/api/meta</a></li><li><a href=\"/api/circuit\">/api/circuit</a></li>"
    "<li>/api/gates/{i}</li><li>/api/pixels/{row}/{col}?bins=K</li></ul></body></html>";

/// HTTP front end for an Api. GET only; static UI assets are served from
/// `static_dir` at "/" when given.
class HttpServer {
public:
    HttpServer(std::shared_ptr<const Session> session, const std::string& static_dir = {})
        : api_(std::move(session)) {
        server_.Get(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
            Query query(req.params.begin(), req.params.end());
            const auto r = api_.get(req.path, query);
            res.status = r.status;
            res.set_content(r.body, "application/json");
        });
        if (!static_dir.empty()) {
            if (!server_.set_mount_point("/", static_dir)) {
                throw Error("serve: static directory '" + static_dir + "' does not exist");
            }
        } else {
            server_.Get("/", [](const httplib::Request&, httplib::Response& res) {
                res.set_content(kPlaceholderPage, "text/html");
            });
        }
    }

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;
    ~HttpServer() { stop(); }

    /// Blocks serving on host:port. Returns false if the socket could not be bound.
    bool listen(const std::string& host, int port) { return server_.listen(host, port); }

    /// Starts serving on an ephemeral port in a background thread and returns the port.
    int start_background(const std::string& host = "127.0.0.1") {
        const int port = server_.bind_to_any_port(host);
        if (port < 0) {
            throw Error("serve: could not bind a port on " + host);
        }
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
        return port;
    }

    void stop() {
        server_.stop();
        if (thread_.joinable()) {
            thread_.join();
        }
    }

private:
    Api api_;
    httplib::Server server_;
    std::thread thread_;
};

} // namespace neqrscope::api

#endif

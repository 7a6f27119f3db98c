#pragma once

#include <memory>
#include <string>

#include "aog/service.hpp"

namespace aog {

/// JSON-over-HTTP front end for a GameService.
///
///   POST /sessions                 {graph, role, opponent} -> {id, view}
///   GET  /sessions/{id}            -> view
///   POST /sessions/{id}/query      {edge:[u,v]} -> {dir, newly_forced, view}
///   POST /sessions/{id}/answer     {dir:[x,y]} -> {next_query, view}
///   GET  /sessions/{id}/hint       -> hint
///   GET  /sessions/{id}/transcript -> transcript
///
/// Errors come back as {"error": message, ...} with status 400, 404, 409
/// or 429.
class HttpApi {
public:
    explicit HttpApi(GameService& service);
    ~HttpApi();

    /// Binds to an ephemeral port and returns it (or -1).
    int bind_any(const std::string& host = "127.0.0.1");
    bool bind(const std::string& host, int port);
    /// Serves until stop(); blocks.
    bool listen();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace aog

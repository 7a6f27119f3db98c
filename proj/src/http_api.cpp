#include "aog/http_api.hpp"

#include "httplib.h"

namespace aog {

struct HttpApi::Impl {
    GameService& service;
    httplib::Server server;

    explicit Impl(GameService& s) : service(s) {}
};

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
}

template <class F>
void handle(httplib::Response& res, F&& f) {
    try {
        send_json(res, 200, f());
    } catch (const ApiError& e) {
        nlohmann::ordered_json body;
        body["error"] = e.what();
        if (e.extra().is_object())
            for (const auto& [k, v] : e.extra().items()) body[k] = v;
        send_json(res, e.status(), body);
    } catch (const std::exception& e) {
        nlohmann::ordered_json body;
        body["error"] = e.what();
        send_json(res, 500, body);
    }
}

nlohmann::json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return nlohmann::json::object();
    try {
        return nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::exception& e) {
        throw ApiError(400, std::string("request body is not JSON: ") + e.what());
    }
}

}  // namespace

HttpApi::HttpApi(GameService& service) : impl_(std::make_unique<Impl>(service)) {
    auto& srv = impl_->server;
    GameService& svc = impl_->service;
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    srv.Post("/sessions", [&svc](const httplib::Request& req, httplib::Response& res) {
        handle(res, [&] { return svc.create_session(parse_body(req)); });
    });
    srv.Get(R"(/sessions/([0-9a-f]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
        handle(res, [&] { return svc.view(req.matches[1]); });
    });
    srv.Post(R"(/sessions/([0-9a-f]+)/query)", [&svc](const httplib::Request& req, httplib::Response& res) {
        handle(res, [&] { return svc.query(req.matches[1], parse_body(req)); });
    });
    srv.Post(R"(/sessions/([0-9a-f]+)/answer)", [&svc](const httplib::Request& req, httplib::Response& res) {
        handle(res, [&] { return svc.answer(req.matches[1], parse_body(req)); });
    });
    srv.Get(R"(/sessions/([0-9a-f]+)/hint)", [&svc](const httplib::Request& req, httplib::Response& res) {
        handle(res, [&] { return svc.hint(req.matches[1]); });
    });
    srv.Get(R"(/sessions/([0-9a-f]+)/transcript)", [&svc](const httplib::Request& req, httplib::Response& res) {
        handle(res, [&] { return svc.transcript(req.matches[1]); });
    });
    srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return;
        nlohmann::ordered_json body;
        body["error"] = res.status == 404 ? "no such endpoint" : "request failed";
        res.set_content(body.dump(), "application/json; charset=utf-8");
    });
}

HttpApi::~HttpApi() = default;

int HttpApi::bind_any(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpApi::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }
bool HttpApi::listen() { return impl_->server.listen_after_bind(); }
void HttpApi::stop() { impl_->server.stop(); }
void HttpApi::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace aog

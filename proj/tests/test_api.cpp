#include <atomic>
#include <filesystem>
#include <thread>

#include "doctest.h"
#include "httplib.h"

#include "aog/game.hpp"
#include "aog/http_api.hpp"
#include "aog/service.hpp"

using namespace aog;
using nlohmann::json;

namespace {

int status_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ApiError& e) {
        return e.status();
    }
    return 200;
}

json k3_body(const char* role, const char* opponent) {
    return json{{"graph", "3 3\n0 1\n0 2\n1 2"}, {"role", role}, {"opponent", opponent}};
}

}  // namespace

TEST_SUITE("game-api") {

TEST_CASE("creating sessions") {
    GameService svc;
    auto created = svc.create_session(k3_body("algy", "greedy"));
    const auto& view = created["view"];
    CHECK(view["edges"].size() == 3);
    for (const auto& e : view["edges"]) CHECK(e["status"] == "open");
    CHECK(view["total"] == 0);
    CHECK(view["terminal"] == false);
    CHECK(view["bounds"]["info"] == 3);

    auto tri = svc.create_session(json{{"graph", {{"kind", "multipartite"}, {"parts", {2, 2, 1}}}},
                                       {"role", "algy"},
                                       {"opponent", "tripartite:2,2,1"}});
    CHECK(tri["view"]["edges"].size() == 8);

    auto s = svc.create_session(k3_body("strategist", "sort:binary"));
    CHECK(s["view"]["pending"] == json::array({0, 1}));

    CHECK(status_of([&] { svc.create_session(json{{"graph", "3 1\n0 0"}}); }) == 400);
    CHECK(status_of([&] { svc.create_session(k3_body("algy", "nonsense")); }) == 400);
    CHECK(status_of([&] { svc.create_session(k3_body("referee", "greedy")); }) == 400);
    CHECK(status_of([&] {
              svc.create_session(json{{"graph", {{"kind", "complete"}, {"n", 9}}}, {"opponent", "optimal"}});
          }) == 400);
    CHECK(status_of([&] { svc.view("ffff"); }) == 404);
    CHECK(svc.session_count() == 3);
}

TEST_CASE("human Algy against greedy") {
    GameService svc;
    std::string id = svc.create_session(k3_body("algy", "greedy"))["id"];
    auto r1 = svc.query(id, json{{"edge", {0, 1}}});
    CHECK(r1["newly_forced"].empty());
    CHECK(r1["view"]["total"] == 1);
    auto r2 = svc.query(id, json{{"edge", {1, 2}}});
    CHECK(r2["dir"] == json::array({2, 1}));
    CHECK(r2["view"]["edges"][1]["status"] == "open");  // {0,2}
    CHECK(status_of([&] { svc.query(id, json{{"edge", {0, 1}}}); }) == 409);
    CHECK(status_of([&] { svc.query(id, json{{"edge", {0, 5}}}); }) == 400);
    CHECK(status_of([&] { svc.query(id, json{{"edge", "x"}}); }) == 400);
    CHECK(status_of([&] { svc.answer(id, json{{"dir", {0, 1}}}); }) == 409);
    auto r3 = svc.query(id, json{{"edge", {0, 2}}});
    CHECK(r3["view"]["terminal"] == true);
    CHECK(r3["view"]["total"] == 3);
    CHECK(status_of([&] { svc.query(id, json{{"edge", {0, 2}}}); }) == 409);

    Transcript t = transcript_from_json(svc.transcript(id));
    CHECK(t.total == 3);
    CHECK(replay(t).is_terminal());

    auto h = svc.hint(id);
    CHECK(h["game_over"] == true);
    CHECK(h["total"] == 3);
}

TEST_CASE("human Strategist against sorting") {
    GameService svc;
    auto created = svc.create_session(k3_body("strategist", "sort:binary"));
    std::string id = created["id"];
    auto a1 = svc.answer(id, json{{"dir", {0, 1}}});
    REQUIRE(a1["next_query"].is_array());
    auto q = a1["next_query"];
    CHECK(status_of([&] { svc.answer(id, json{{"dir", {0, 1}}}); }) == 400);
    CHECK(status_of([&] { svc.query(id, json{{"edge", {0, 1}}}); }) == 409);
    // Answer along 0 < 1 < 2 until the engine stops asking.
    json next = q;
    while (next.is_array()) {
        int a = next[0], b = next[1];
        auto r = svc.answer(id, json{{"dir", {a, b}}});
        next = r["next_query"];
    }
    auto v = svc.view(id);
    CHECK(v["terminal"] == true);
    CHECK(v["total"] == 2);
    CHECK(status_of([&] { svc.answer(id, json{{"dir", {0, 2}}}); }) == 409);
}

TEST_CASE("cycle-creating answers are rejected with the forced alternative") {
    GameService svc;
    // Exhaustive asks {0,1}, {0,2}, {1,2}; answering (1,0) then (0,2) forces 1 -> 2.
    std::string id = svc.create_session(k3_body("strategist", "exhaustive"))["id"];
    svc.answer(id, json{{"dir", {1, 0}}});
    auto r = svc.answer(id, json{{"dir", {0, 2}}});
    CHECK(r["view"]["terminal"] == true);
    CHECK(r["next_query"].is_null());

    // Round one of tworound with p = 1 asks every edge, forced or not.
    GameService svc2;
    auto k4 = json{{"graph", {{"kind", "complete"}, {"n", 4}}}, {"role", "strategist"}, {"opponent", "tworound:p=1"}};
    std::string id2 = svc2.create_session(k4)["id"];
    svc2.answer(id2, json{{"dir", {1, 0}}});
    svc2.answer(id2, json{{"dir", {0, 2}}});
    auto r2 = svc2.answer(id2, json{{"dir", {0, 3}}});
    REQUIRE(r2["next_query"] == json::array({1, 2}));
    CHECK(r2["view"]["edges"][3]["status"] == "forced");
    try {
        svc2.answer(id2, json{{"dir", {2, 1}}});
        FAIL("expected a rejection");
    } catch (const ApiError& e) {
        CHECK(e.status() == 409);
        CHECK(e.extra()["forced"] == json::array({1, 2}));
    }
    auto r3 = svc2.answer(id2, json{{"dir", {1, 2}}});
    CHECK(r3["view"]["total"] == 4);
    CHECK(r3["view"]["terminal"] == false);
}

TEST_CASE("hints") {
    GameService svc;
    std::string id = svc.create_session(k3_body("algy", "greedy"))["id"];
    auto h = svc.hint(id);
    CHECK(h["source"] == "optimal");
    CHECK(h["edge"] == json::array({0, 1}));
    CHECK(h["bounds"]["info"] == 3);
    CHECK(h["extensions"] == 6);
    CHECK(h["remaining"] == 3);

    std::string big = svc.create_session(json{{"graph", {{"kind", "gnp"}, {"n", 14}, {"p", 0.5}, {"seed", 1}}},
                                              {"opponent", "greedy"}})["id"];
    auto hb = svc.hint(big);
    CHECK(hb["source"] == "heuristic");
    CHECK(hb["edge"].is_array());

    std::string strat = svc.create_session(k3_body("strategist", "exhaustive"))["id"];
    svc.answer(strat, json{{"dir", {0, 1}}});
    auto hs = svc.hint(strat);
    CHECK(hs["dir"] == json::array({0, 2}));  // (2,0) would force {1,2}
}

TEST_CASE("sessions are isolated under concurrent requests") {
    GameService svc;
    std::vector<std::string> ids;
    for (int i = 0; i < 8; ++i)
        ids.push_back(svc.create_session(json{{"graph", {{"kind", "complete"}, {"n", 6}}},
                                              {"opponent", "order:random:seed=" + std::to_string(i)}})["id"]);
    std::vector<std::thread> pool;
    std::atomic<int> failures{0};
    for (int i = 0; i < 8; ++i)
        pool.emplace_back([&, i] {
            for (int rep = 0; rep < 20; ++rep) {
                auto v = svc.view(ids[i]);
                if (v["terminal"] == true) break;
                for (const auto& e : v["edges"])
                    if (e["status"] == "open") {
                        svc.query(ids[i], json{{"edge", e["e"]}});
                        break;
                    }
            }
            Transcript t = transcript_from_json(svc.transcript(ids[i]));
            if (!replay(t).is_terminal()) ++failures;
            if (svc.view(ids[i])["total"] != t.total) ++failures;
        });
    for (auto& t : pool) t.join();
    CHECK(failures == 0);
}

TEST_CASE("persisted sessions resume") {
    auto dir = std::filesystem::temp_directory_path() / "aog_api_persist_test";
    std::filesystem::remove_all(dir);
    std::string a, b;
    {
        ServiceOptions o;
        o.persist_dir = dir;
        GameService svc(o);
        a = svc.create_session(json{{"graph", {{"kind", "multipartite"}, {"parts", {2, 2, 1}}}},
                                    {"opponent", "tripartite:2,2,1"}})["id"];
        svc.query(a, json{{"edge", {2, 4}}});
        b = svc.create_session(k3_body("strategist", "sort:binary"))["id"];
        svc.answer(b, json{{"dir", {1, 0}}});
    }
    ServiceOptions o;
    o.persist_dir = dir;
    GameService svc(o);
    CHECK(svc.session_count() == 2);
    CHECK(svc.view(a)["total"] == 1);
    // The tripartite commitment at z = 4 survived: z sits below everything.
    CHECK(svc.query(a, json{{"edge", {0, 4}}})["dir"] == json::array({4, 0}));
    CHECK(svc.view(b)["pending"].is_array());
    std::filesystem::remove_all(dir);
}

TEST_CASE("HTTP round trip") {
    GameService svc;
    HttpApi api(svc);
    int port = api.bind_any();
    REQUIRE(port > 0);
    std::thread server([&] { api.listen(); });
    api.wait_until_ready();

    httplib::Client cli("127.0.0.1", port);
    auto created = cli.Post("/sessions", k3_body("algy", "greedy").dump(), "application/json");
    REQUIRE(created);
    CHECK(created->status == 200);
    json body = json::parse(created->body);
    std::string id = body["id"];

    auto q = cli.Post("/sessions/" + id + "/query", R"({"edge":[0,1]})", "application/json");
    REQUIRE(q);
    CHECK(q->status == 200);
    CHECK(json::parse(q->body)["view"]["total"] == 1);

    auto again = cli.Post("/sessions/" + id + "/query", R"({"edge":[0,1]})", "application/json");
    CHECK(again->status == 409);
    CHECK(json::parse(again->body)["error"] == "already queried");

    auto bad = cli.Post("/sessions/" + id + "/query", "{not json", "application/json");
    CHECK(bad->status == 400);

    auto view = cli.Get("/sessions/" + id);
    CHECK(view->status == 200);
    CHECK(json::parse(view->body)["edges"].size() == 3);

    auto hint = cli.Get("/sessions/" + id + "/hint");
    CHECK(hint->status == 200);
    CHECK(json::parse(hint->body).contains("bounds"));

    CHECK(cli.Get("/sessions/abc123")->status == 404);
    CHECK(cli.Get("/nowhere")->status == 404);

    auto strat = cli.Post("/sessions", k3_body("strategist", "exhaustive").dump(), "application/json");
    std::string sid = json::parse(strat->body)["id"];
    auto ans = cli.Post("/sessions/" + sid + "/answer", R"({"dir":[0,1]})", "application/json");
    CHECK(ans->status == 200);
    CHECK(json::parse(ans->body)["next_query"] == json::array({0, 2}));

    api.stop();
    server.join();
}

}  // TEST_SUITE

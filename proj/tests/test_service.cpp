#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"

#include "alphatag/service.hpp"

using namespace alphatag;

namespace {

Json post(GameService& s, const std::string& path, const Json& body, int want_status = 200) {
  auto r = s.handle("POST", path, {}, body.dump());
  EXPECT_EQ(r.status, want_status) << r.body.dump();
  return r.body;
}

Json get(GameService& s, const std::string& path, std::map<std::string, std::string> query, int want_status = 200) {
  auto r = s.handle("GET", path, query, "");
  EXPECT_EQ(r.status, want_status) << r.body.dump();
  return r.body;
}

Json new_game(GameService& s, const Json& alpha, const Json& pile) {
  return post(s, "/api/game/new", {{"alpha", alpha}, {"pile", pile}});
}

}  // namespace

TEST(Service, SequenceRoute) {
  GameService s;
  Json doc = get(s, "/api/sequence", {{"alpha", "7/2"}, {"count", "10"}});
  EXPECT_EQ(doc["kind"], "sequence");
  EXPECT_EQ(doc["payload"]["terms"].back(), "21");
  get(s, "/api/sequence", {{"alpha", "1/2"}, {"count", "10"}}, 400);
  get(s, "/api/sequence", {{"alpha", "2"}}, 400);
  get(s, "/api/sequence", {{"alpha", "2"}, {"count", "100000000"}}, 400);
}

TEST(Service, NewGameReportsClassAndLegalRange) {
  GameService s;
  Json g = new_game(s, "2", 10);
  EXPECT_EQ(g["session_id"], "g1");
  EXPECT_EQ(g["outcome_class"], "N");
  EXPECT_EQ(g["state"]["pile"], "10");
  EXPECT_EQ(g["state"]["cap"], "9");
  EXPECT_EQ(g["state"]["legal_range"]["min"], "1");
  EXPECT_EQ(g["state"]["legal_range"]["max"], "9");
  EXPECT_EQ(g["finished"], false);

  Json numeric = new_game(s, 3.5, "21");
  EXPECT_EQ(numeric["state"]["alpha"], "7/2");
  EXPECT_EQ(numeric["session_id"], "g2");
  EXPECT_EQ(numeric["outcome_class"], "P");
}

TEST(Service, PileOfOneIsAnImmediateLoss) {
  GameService s;
  Json g = new_game(s, "2", 1);
  EXPECT_EQ(g["outcome_class"], "P");
  EXPECT_EQ(g["finished"], true);
  EXPECT_EQ(g["winner"], "engine");
  EXPECT_TRUE(g["state"]["legal_range"].is_null());
  post(s, "/api/game/move", {{"session_id", g["session_id"]}, {"take", 1}}, 409);
}

TEST(Service, HintOnFibonacciState) {
  GameService s;
  Json g = new_game(s, "2", 10);
  Json h = get(s, "/api/game/hint", {{"session_id", g["session_id"]}});
  EXPECT_EQ(h["move"], "2");
  EXPECT_EQ(h["zeckendorf_parts"], Json::array({"2", "8"}));
  EXPECT_EQ(h["winning"], true);
  EXPECT_TRUE(h["explanation"].is_string());

  Json lost = new_game(s, "2", 13);
  Json lh = get(s, "/api/game/hint", {{"session_id", lost["session_id"]}});
  EXPECT_EQ(lh["move"], "1");
  EXPECT_EQ(lh["winning"], false);
}

TEST(Service, IllegalMoveIsRejectedWithRangeAndStateIsKept) {
  GameService s;
  Json g = new_game(s, "2", 10);
  Json m = post(s, "/api/game/move", {{"session_id", g["session_id"]}, {"take", 2}});
  // Engine faces (8, 4) and stalls with 1; the human now has cap 2.
  EXPECT_EQ(m["engine_reply_move"], "1");
  EXPECT_EQ(m["state"]["pile"], "7");
  EXPECT_EQ(m["state"]["cap"], "2");

  Json bad = post(s, "/api/game/move", {{"session_id", g["session_id"]}, {"take", 9}}, 400);
  EXPECT_EQ(bad["error"], "illegal_move");
  EXPECT_EQ(bad["legal_range"]["min"], "1");
  EXPECT_EQ(bad["legal_range"]["max"], "2");
  post(s, "/api/game/move", {{"session_id", g["session_id"]}, {"take", 0}}, 400);
  post(s, "/api/game/move", {{"session_id", g["session_id"]}, {"take", -1}}, 400);

  Json h = get(s, "/api/game/hint", {{"session_id", g["session_id"]}});
  EXPECT_EQ(h["zeckendorf_parts"], Json::array({"2", "5"}));
}

TEST(Service, MoveNineWhenCapIsFour) {
  GameService s;
  Json g = new_game(s, "2", 5);
  Json bad = post(s, "/api/game/move", {{"session_id", g["session_id"]}, {"take", 9}}, 400);
  EXPECT_EQ(bad["legal_range"], (Json{{"min", "1"}, {"max", "4"}}));
}

TEST(Service, ScriptedSessionToCompletion) {
  // Human follows the hints; the opening is N so the human must win,
  // matching a playout of two engines.
  GameService s;
  Json g = new_game(s, "2", 10);
  const std::string id = g["session_id"];
  Json last;
  for (int turn = 0; turn < 20; ++turn) {
    Json h = get(s, "/api/game/hint", {{"session_id", id}});
    last = post(s, "/api/game/move", {{"session_id", id}, {"take", h["move"]}});
    if (last["finished"] == true) break;
    Natural pile = Natural::parse(last["state"]["pile"].get<std::string>());
    Natural cap = Natural::parse(last["state"]["cap"].get<std::string>());
    EXPECT_EQ(last["state"]["legal_range"]["max"], std::min(pile, cap).str());
  }
  ASSERT_EQ(last["finished"], true);
  Solver a(Rational(2));
  Solver b(Rational(2));
  auto t = playout(Rational(2), Natural(10), engine_source(a), engine_source(b));
  EXPECT_EQ(last["winner"], t.winner == Player::first ? "human" : "engine");
  get(s, "/api/game/hint", {{"session_id", id}}, 409);
  post(s, "/api/game/move", {{"session_id", id}, {"take", 1}}, 409);
}

TEST(Service, UnknownSessionAndRoute) {
  GameService s;
  Json e = post(s, "/api/game/move", {{"session_id", "g99"}, {"take", 1}}, 404);
  EXPECT_EQ(e["error"], "unknown_session");
  get(s, "/api/game/hint", {{"session_id", "nope"}}, 404);
  get(s, "/api/nothing", {}, 404);
  auto r = s.handle("POST", "/api/game/new", {}, "{not json");
  EXPECT_EQ(r.status, 400);
  post(s, "/api/game/new", {{"alpha", "1/2"}, {"pile", 5}}, 400);
  post(s, "/api/game/new", {{"alpha", "2"}}, 400);
}

TEST(Service, IdenticalRequestsGiveIdenticalResponses) {
  auto script = [] {
    GameService s;
    std::string out;
    auto g = s.handle("POST", "/api/game/new", {}, R"({"alpha":"7/2","pile":"40"})");
    out += g.body.dump();
    out += s.handle("GET", "/api/game/hint", {{"session_id", "g1"}}, "").body.dump();
    out += s.handle("POST", "/api/game/move", {}, R"({"session_id":"g1","take":3})").body.dump();
    out += s.handle("POST", "/api/game/move", {}, R"({"session_id":"g1","take":1})").body.dump();
    return out;
  };
  EXPECT_EQ(script(), script());
}

TEST(Service, IdleSessionsAreEvicted) {
  auto now = std::make_shared<GameService::Clock::time_point>(GameService::Clock::time_point{});
  GameService::Options opts;
  opts.idle_timeout = std::chrono::seconds(60);
  opts.now = [now] { return *now; };
  GameService s(opts);
  new_game(s, "2", 10);
  new_game(s, "2", 20);
  EXPECT_EQ(s.session_count(), 2u);
  *now += std::chrono::seconds(50);
  get(s, "/api/game/hint", {{"session_id", "g2"}});
  *now += std::chrono::seconds(30);
  get(s, "/api/game/hint", {{"session_id", "g1"}}, 404);
  EXPECT_EQ(s.session_count(), 1u);
  get(s, "/api/game/hint", {{"session_id", "g2"}});
}

TEST(Service, LargePilesUseTheoryDerivedMoves) {
  GameService s;
  Json g = new_game(s, "2", "1000000");
  Json m = post(s, "/api/game/move", {{"session_id", g["session_id"]}, {"take", 1}});
  EXPECT_EQ(m["engine_move_theory_derived"], true);
  post(s, "/api/game/new", {{"alpha", "2"}, {"pile", "10000000000000"}}, 400);
}

TEST(Service, ConcurrentSessions) {
  GameService s;
  std::vector<std::thread> threads;
  std::atomic<int> finished{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      auto g = s.handle("POST", "/api/game/new", {}, R"({"alpha":"2","pile":30})");
      std::string id = g.body["session_id"];
      for (int i = 0; i < 30; ++i) {
        auto h = s.handle("GET", "/api/game/hint", {{"session_id", id}}, "");
        if (h.status != 200) break;
        Json body{{"session_id", id}, {"take", h.body["move"]}};
        auto m = s.handle("POST", "/api/game/move", {}, body.dump());
        if (m.body["finished"] == true) {
          finished++;
          break;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(finished.load(), 4);
  EXPECT_EQ(s.session_count(), 4u);
}

TEST(HttpServer, LoopbackRoundTrip) {
  GameService service;
  HttpServer server(service);
  int port = server.bind("127.0.0.1", 0);
  if (port < 0) GTEST_SKIP() << "cannot bind a loopback port";
  std::thread runner([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/api/game/new", R"({"alpha":"2","pile":10})", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 200);
  EXPECT_EQ(created->get_header_value("Access-Control-Allow-Origin"), "*");
  Json g = Json::parse(created->body);
  EXPECT_EQ(g["outcome_class"], "N");

  auto hint = client.Get("/api/game/hint?session_id=g1");
  ASSERT_TRUE(hint);
  EXPECT_EQ(Json::parse(hint->body)["move"], "2");

  auto bad = client.Post("/api/game/move", R"({"session_id":"g1","take":9})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 200);  // 9 is legal at cap 9
  auto missing = client.Get("/api/game/hint?session_id=zzz");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  server.stop();
  runner.join();
}

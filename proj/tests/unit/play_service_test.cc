// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/play_service.h"

#include "ddab/environment_io.h"
#include "ddab/trace.h"
#include "ddab/verifier.h"
#include "doctest.h"
#include "test_util.h"

namespace ddab {
namespace {

using nlohmann::json;
using testing::Chain;

json Config(const Environment& env, int k, const std::string& x, const std::string& start) {
  return {{"environment", EnvironmentToJson(env)}, {"k", k}, {"defender_total", x}, {"attacker_start", start}};
}

json New(const json& config, bool fractional = false) {
  return {{"type", "new"}, {"config", config}, {"fractional", fractional}};
}

json Go(const json& state, const std::string& from, const std::string& to, const std::string& amount = "1/1") {
  return {{"type", "move"}, {"session", state.at("session")}, {"flows", {{{"from", from}, {"to", to}, {"amount", amount}}}}};
}

std::vector<int> Centers(const json& state) {
  std::vector<int> out;
  for (const auto& f : state.at("platoon_centers")) {
    for (int c : f.at("centers")) out.push_back(c);
  }
  return out;
}

// p1..p5 with an outside loop p5 - u - a - b - c - v - p1. U_1 holds u, v.
Environment Loop() {
  return Chain(5, {"u", "a", "b", "c", "v"},
               {{"u", "p5"}, {"a", "u"}, {"b", "a"}, {"c", "b"}, {"v", "c"}, {"v", "p1"}});
}

TEST_CASE("legal moves enumerate stays, hops and splits") {
  PlayService service;
  const json s = service.Handle(New(Config(Loop(), 1, "eq9", "b")));
  REQUIRE(s.at("type") == "state");
  CHECK(s.at("phase") == "attacker");
  CHECK(s.at("legal_moves").size() == 3);  // stay, b -> a, b -> c
  const json f = service.Handle(New(Config(Loop(), 1, "eq9", "b"), true));
  // Plus 3 node pairs of {b, a, c} times 5 shares.
  CHECK(f.at("legal_moves").size() == 3 + 3 * 5);
  CHECK(f.at("fractional") == true);
}

TEST_CASE("illegal moves leave the session untouched") {
  PlayService service;
  const json s = service.Handle(New(Config(Loop(), 1, "eq9", "b")));
  for (const json& bad : {Go(s, "b", "p5"), Go(s, "a", "u"),
                          json{{"type", "move"},
                               {"session", s.at("session")},
                               {"flows", {{{"from", "b"}, {"to", "a"}, {"amount", "1/2"}},
                                          {{"from", "b"}, {"to", "c"}, {"amount", "1/2"}}}}},
                          json{{"type", "move"}, {"session", s.at("session")}, {"flows", "garbage"}}}) {
    const json r = service.Handle(bad);
    CHECK(r.at("type") == "error");
    CHECK(r.at("code") == "illegal_move");
  }
  const json e = service.Handle({{"type", "export"}, {"session", s.at("session")}});
  CHECK(e.at("log").size() == 1);
  const json next = service.Handle(Go(s, "b", "a"));
  CHECK(next.at("t") == 1);
  CHECK(next.at("attacker_amounts").at("a") == "1/1");
}

TEST_CASE("a tie on a guarded path node is safe and the defender answers") {
  PlayService service;
  const json s = service.Handle(New(Config(Chain(5, {"u"}, {{"u", "p3"}}), 1, "eq9", "u")));
  const json r = service.Handle(Go(s, "u", "p3"));
  REQUIRE(r.at("type") == "state");
  CHECK(r.at("outcome").is_null());
  CHECK(r.at("defender_amounts").at("p3") == "1/1");
  CHECK(r.at("attacker_amounts").at("p3") == "1/1");
  CHECK(r.at("last_moves").at("attacker").size() == 1);
  CHECK(r.at("last_moves").at("defender").is_array());
  CHECK(r.at("phase") == "attacker");
}

TEST_CASE("leaving and reentering elsewhere recenters, then re-engages") {
  PlayService service;
  json s = service.Handle(New(Config(Loop(), 1, "eq9", "a")));
  CHECK(Centers(s) == std::vector<int>{2});
  s = service.Handle(Go(s, "a", "u"));
  REQUIRE(s.at("outcome").is_null());
  s = service.Handle(Go(s, "u", "p5"));
  REQUIRE(s.at("outcome").is_null());
  CHECK(Centers(s) == std::vector<int>{3});
  s = service.Handle(Go(s, "p5", "u"));
  s = service.Handle(Go(s, "u", "a"));
  // One defender action after the exit the platoon is back at the center.
  CHECK(Centers(s) == std::vector<int>{2});
  for (const auto& [from, to] : std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "c"}, {"c", "v"}}) {
    s = service.Handle(Go(s, from, to));
    REQUIRE(s.at("outcome").is_null());
  }
  s = service.Handle(Go(s, "v", "p1"));
  CHECK(s.at("outcome").is_null());
  CHECK(Centers(s) == std::vector<int>{1});
  CHECK(s.at("defender_amounts").at("p1") == "1/1");
}

TEST_CASE("an under-resourced sandbox flags no guarantee and can be beaten") {
  const Environment gadget = BuildGadget({5, 1, 2, -1, false});
  PlayService service;
  json s = service.Handle(New(Config(gadget, 1, "eq9_minus_1", "q3")));
  CHECK(s.at("no_guarantee") == true);
  CHECK(s.at("required_assets") == "3/1");
  const json at_bound = service.Handle(New(Config(gadget, 1, "eq9", "q3")));
  CHECK(at_bound.at("no_guarantee") == false);
  const std::vector<std::string> route = {"q3", "q2", "q1", "xi", "p2"};
  for (std::size_t i = 1; i < route.size(); ++i) s = service.Handle(Go(s, route[i - 1], route[i]));
  REQUIRE(s.at("outcome").is_object());
  CHECK(s.at("outcome").at("result") == "ATTACKER_WIN");
  CHECK(s.at("outcome").at("witness") == "p2");
  CHECK(s.at("outcome").at("win_step") == 3);
  CHECK(s.at("legal_moves").empty());
  CHECK(service.Handle(Go(s, "p2", "p1")).at("code") == "game_over");
  const json e = service.Handle({{"type", "export"}, {"session", s.at("session")}});
  const auto out = Replay(e.at("trace").get<std::vector<json>>());
  CHECK(out.result == GameResult::kAttackerWin);
  CHECK(out.win_step == 3);
}

TEST_CASE("23-node demo starts with platoons at partition centers") {
  PlayService service(PlayOptions{std::chrono::minutes(30), DDAB_SOURCE_DIR "/scenarios"});
  const json s = service.Handle(New(
      {{"environment", "demo23_env.json"}, {"k", 1}, {"defender_total", "eq9"}, {"attacker_start", "a3"}}));
  REQUIRE(s.at("type") == "state");
  CHECK(Centers(s) == std::vector<int>{2, 7, 12, 17, 21});
  CHECK(s.at("required_assets") == "15/1");
  CHECK(s.at("visibility").size() == 25);
}

TEST_CASE("bad configs get structured errors") {
  PlayService service;
  json env = EnvironmentToJson(Chain(3));
  env["edges"].push_back({"p3", "ghost"});
  const json r = service.Handle(New({{"environment", env}, {"k", 0}, {"defender_total", 3}, {"attacker_start", "p1"}}));
  CHECK(r.at("code") == "invalid_environment");
  const std::string message = r.at("message");
  CHECK(message.find("'p3', 'ghost'") != std::string::npos);

  // Not a shortest path: p1 - x - p4 bypasses p2, p3.
  const Environment ok = Chain(4, {"x", "u"}, {{"x", "p1"}, {"u", "x"}});
  json shortcut = EnvironmentToJson(ok);
  shortcut["edges"].push_back({"x", "p4"});
  const json w = service.Handle(New({{"environment", shortcut}, {"k", 0}, {"defender_total", 3}, {"attacker_start", "u"}}));
  CHECK(w.at("code") == "invalid_environment");
  CHECK_FALSE(w.at("witness").empty());

  json cfg = Config(ok, 0, "eq9", "u");
  cfg["strategy"] = {{"kind", "greedy"}};
  CHECK(service.Handle(New(cfg)).at("code") == "invalid_config");
  CHECK(service.Handle(New(Config(ok, -1, "eq9", "u"))).at("code") == "invalid_config");
  CHECK(service.Handle({{"type", "nope"}}).at("code") == "bad_request");
  CHECK(json::parse(service.HandleText("{not json")).at("code") == "bad_request");
  CHECK(service.Handle({{"type", "move"}, {"session", "s999"}}).at("code") == "not_found");
  CHECK(service.session_count() == 0);
}

TEST_CASE("idle sessions expire") {
  auto now = std::chrono::steady_clock::time_point{};
  PlayService service(PlayOptions{std::chrono::seconds(60), ".", [&] { return now; }});
  const json s = service.Handle(New(Config(Loop(), 1, "eq9", "b")));
  CHECK(service.session_count() == 1);
  now += std::chrono::seconds(59);
  CHECK(service.Handle(Go(s, "b", "a")).at("type") == "state");
  now += std::chrono::seconds(61);
  CHECK(service.Handle(Go(s, "a", "b")).at("code") == "not_found");
  CHECK(service.session_count() == 0);
}

TEST_CASE("the message log replays to the same state") {
  PlayService service;
  json s = service.Handle(New(Config(Loop(), 1, "eq9", "b"), true));
  s = service.Handle(Go(s, "b", "a"));
  s = service.Handle({{"type", "move"},
                      {"session", s.at("session")},
                      {"flows", {{{"from", "a"}, {"to", "u"}, {"amount", "3/10"}},
                                 {{"from", "a"}, {"to", "b"}, {"amount", "7/10"}}}}});
  REQUIRE(s.at("type") == "state");
  CHECK(s.at("groups").size() == 2);
  // The shard at u holds 3/10, not the whole unit.
  CHECK(service.Handle(Go(s, "u", "p5")).at("code") == "illegal_move");
  s = service.Handle(Go(s, "u", "p5", "3/10"));
  REQUIRE(s.at("type") == "state");
  const json e = service.Handle({{"type", "export"}, {"session", s.at("session")}});
  CHECK(e.at("log").size() == 4);
  json again = ReplaySessionLog(e.at("log").get<std::vector<json>>());
  json mine = s;
  again.erase("session");
  mine.erase("session");
  CHECK(again == mine);
  CHECK(e.at("trace").front().at("record") == "header");
}

}  // namespace
}  // namespace ddab

// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/engine.h"

#include "ddab/errors.h"
#include "ddab/trace.h"
#include "ddab/verifier.h"
#include "doctest.h"
#include "test_util.h"

namespace ddab {
namespace {

using nlohmann::json;
using testing::Chain;
using testing::Shared;

GameConfig Config(Environment env, int k, Rational x, const std::string& start, json strategy) {
  GameConfig cfg;
  cfg.env = Shared(std::move(env));
  cfg.environment_source = "inline";
  cfg.k = k;
  cfg.defender_total = x;
  cfg.attacker_start = AssetDistribution::Single(cfg.env->num_nodes(), cfg.env->graph().Index(start), 1);
  cfg.strategy = std::move(strategy);
  return cfg;
}

const json kStay = {{"kind", "scripted"}, {"turns", json::array()}};

TEST_CASE("an attacker that stays outside ends in a cycle") {
  const auto out = RunGame(Config(Chain(5, {"u", "w"}, {{"u", "p3"}, {"w", "u"}}), 1, 3, "w", kStay));
  CHECK(out.result == GameResult::kDefendedCycle);
  CHECK_FALSE(out.win_step.has_value());
  CHECK(out.violations.empty());
}

TEST_CASE("gadget strike below the bound") {
  const auto out = RunGame(Config(BuildGadget({5, 1, 2, -1, false}), 1, 2, "q3", {{"kind", "gadget"}, {"alpha", 2}}));
  REQUIRE(out.result == GameResult::kAttackerWin);
  CHECK(out.win_step == 3);
  const Environment gadget = BuildGadget({5, 1, 2, -1, false});
  CHECK(gadget.graph().name(*out.witness) == "p2");
  CHECK(out.steps == 4);
}

TEST_CASE("gadget strike at the bound is shadowed") {
  const auto out = RunGame(Config(BuildGadget({5, 1, 2, -1, false}), 1, 3, "q3", {{"kind", "gadget"}, {"alpha", 2}}));
  CHECK(out.result == GameResult::kDefendedCycle);
  CHECK(out.violations.empty());
  // The platoon tracks xi and stays centered on the targets.
  for (const auto& snap : out.platoon_history) {
    for (const auto& f : snap) CHECK(f.centers == std::vector<int>{2});
  }
}

TEST_CASE("horizon") {
  GameConfig cfg = Config(Chain(5, {"u"}, {{"u", "p3"}}), 1, 3, "u", {{"kind", "random"}, {"seed", 3}});
  cfg.max_steps = 7;
  const auto out = RunGame(cfg);
  CHECK(out.result == GameResult::kDefendedHorizon);
  CHECK(out.steps == 7);
  CHECK(Config(Chain(5), 1, 3, "p1", kStay).Horizon() == 4 * 5 + 64);
}

TEST_CASE("turn order") {
  GameRunner r(Config(Chain(5, {"u"}, {{"u", "p3"}}), 1, 3, "u", kStay));
  CHECK(r.state().phase == Phase::kDefender);
  CHECK_THROWS_AS(r.AttackerMove(), ProtocolError);
  CHECK_THROWS_AS(r.Evaluate(), ProtocolError);
  r.DefenderMove();
  CHECK(r.state().phase == Phase::kAttacker);
  CHECK_THROWS_AS(r.DefenderMove(), ProtocolError);
  r.AttackerMove();
  r.Evaluate();
  CHECK(r.state().t == 1);
  CHECK(r.state().phase == Phase::kDefender);
}

TEST_CASE("parallel sub-games equal the monolithic game without splits") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GameConfig cfg =
        Config(BuildGadget({7, 1, 3, -1, true}), 1, 6, "q3", {{"kind", "random"}, {"seed", seed}});
    GameConfig a = cfg;
    a.max_steps = 40;
    const auto mono = RunGame(a);
    const auto par = RunParallelSubgames(a);
    CHECK(mono.result == par.result);
    CHECK(mono.platoon_history == par.platoon_history);
    REQUIRE(mono.trace.size() == par.trace.size());
    for (std::size_t i = 1; i < mono.trace.size(); ++i) CHECK(mono.trace[i] == par.trace[i]);
  }
}

struct Split {
  // u touches p3; a and b sit outside U_1.
  Environment env = Chain(5, {"u", "a", "b"}, {{"u", "p3"}, {"a", "u"}, {"b", "u"}});
  json strategy = json::parse(R"({"kind": "scripted", "turns": [
      [{"from": "u", "to": "a", "amount": "7/10", "group": "A"},
       {"from": "u", "to": "p3", "amount": "3/10", "group": "A"}],
      [{"from": "p3", "to": "u", "group": "A.1"}]]})");
};

TEST_CASE_FIXTURE(Split, "70/30 split keeps the sub-force sums exact") {
  GameConfig cfg = Config(env, 1, 3, "u", strategy);
  CHECK_THROWS_AS(RunGame(cfg), InputError);

  const auto out = RunParallelSubgames(cfg);
  CHECK(out.result != GameResult::kAttackerWin);
  CHECK(out.violations.empty());
  bool saw_split = false;
  for (const auto& snap : out.platoon_history) {
    Rational weight;
    for (const auto& f : snap) weight += f.weight;
    CHECK(weight == Rational(1));
    for (const auto& f : snap) saw_split = saw_split || f.weight == Rational(3, 10);
  }
  CHECK(saw_split);
  bool seen_amount = false;
  for (const auto& rec : out.trace) {
    if (rec.value("phase", "") == "attacker" && rec.at("attacker_amounts").contains("a")) {
      seen_amount = rec.at("attacker_amounts").at("a") == "7/10";
    }
  }
  CHECK(seen_amount);
}

TEST_CASE("several starting groups need parallel sub-games") {
  const Environment env = Chain(5, {"u", "w"}, {{"u", "p2"}, {"w", "p4"}});
  GameConfig cfg = Config(env, 1, 3, "u", kStay);
  std::vector<Rational> y(7);
  y[5] = Rational(1, 2);
  y[6] = Rational(1, 2);
  cfg.attacker_start = AssetDistribution(y);
  CHECK_THROWS_AS(GameRunner{cfg}, InputError);
  cfg.parallel_subgames = true;
  CHECK(Play(cfg).result == GameResult::kDefendedCycle);
}

TEST_CASE("replay reproduces the trace and detects tampering") {
  GameConfig cfg = Config(BuildGadget({5, 1, 2, -1, false}), 1, 2, "q3", {{"kind", "gadget"}, {"alpha", 2}});
  cfg.trace_advantages = true;
  const auto out = RunGame(cfg);
  const auto again = Replay(ParseTrace(SerializeTrace(out.trace)));
  CHECK(again.result == out.result);
  CHECK(again.win_step == out.win_step);
  CHECK(again.witness == out.witness);

  auto tampered = out.trace;
  tampered[3]["defender_amounts"]["p1"] = "5/1";
  try {
    Replay(tampered);
    FAIL("expected CorruptionError");
  } catch (const CorruptionError& e) {
    CHECK(e.record_index() == 3);
  }
  auto truncated = out.trace;
  truncated.pop_back();
  CHECK_THROWS_AS(Replay(truncated), CorruptionError);
  CHECK_THROWS_AS(ParseTrace("{\"record\": \"header\"}\nnot json\n"), CorruptionError);
}

TEST_CASE("long path random sweep replays exactly") {
  std::vector<std::string> extra;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 2; i <= 22; i += 4) {
    extra.push_back("u" + std::to_string(i));
    edges.emplace_back("u" + std::to_string(i), testing::P(i));
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GameConfig cfg = Config(Chain(23, extra, edges), 1, RequiredAssets(23, 1, 1), "u2",
                            {{"kind", "random"}, {"seed", seed}});
    cfg.max_steps = 60;
    const auto out = RunGame(cfg);
    CHECK(out.result != GameResult::kAttackerWin);
    CHECK(out.violations.empty());
    CHECK(Replay(out.trace).steps == out.steps);
  }
}

TEST_CASE("config parsing") {
  const json env = json::parse(R"({"nodes": ["p1", "p2", "p3", "u"],
      "edges": [["p1", "p2"], ["p2", "p3"], ["u", "p2"]], "path": ["p1", "p2", "p3"]})");
  json doc = {{"environment", env}, {"k", 0}, {"defender_total", "eq9"}, {"attacker_start", "u"},
              {"strategy", {{"kind", "greedy"}}}};
  const GameConfig cfg = ParseGameConfig(doc);
  CHECK(cfg.defender_total == Rational(3));
  doc["defender_total"] = "eq9_minus_1";
  CHECK(ParseGameConfig(doc).defender_total == Rational(2));

  auto broken = doc;
  broken.erase("k");
  CHECK_THROWS_AS(ParseGameConfig(broken), InputError);
  broken = doc;
  broken["attacker_start"] = {{"u", "1/2"}};
  CHECK_THROWS_AS(ParseGameConfig(broken), InputError);
  broken = doc;
  broken["strategy"] = {{"kind", "nope"}};
  CHECK_THROWS_AS(ParseGameConfig(broken), InputError);
  broken = doc;
  broken["max_steps"] = 0;
  CHECK_THROWS_AS(ParseGameConfig(broken), InputError);
  broken = doc;
  broken["policy_mutation"] = "chaos";
  CHECK_THROWS_AS(ParseGameConfig(broken), InputError);
  CHECK_THROWS_AS(LoadGameConfig("/nonexistent/config.json"), InputError);
}

TEST_CASE("expectations") {
  const Environment gadget = BuildGadget({5, 1, 2, -1, false});
  const auto out = RunGame(Config(gadget, 1, 2, "q3", {{"kind", "gadget"}, {"alpha", 2}}));
  CHECK(CheckExpectations({{"result", "ATTACKER_WIN"}, {"win_step", 3}, {"witness_in", {"p2", "p3", "p4"}}}, gadget,
                          out)
            .empty());
  CHECK(CheckExpectations({{"result", "DEFENDED_CYCLE"}}, gadget, out).size() == 1);
  CHECK(CheckExpectations({{"platoon_centers", {{2}, {2}}}}, gadget, out).empty());
}

TEST_CASE("negative control: a frozen policy loses where the real one holds") {
  // Attacker enters next to p5; a platoon stuck in the middle cannot follow.
  const Environment env = Chain(5, {"u", "w", "z"}, {{"u", "p5"}, {"w", "u"}, {"z", "w"}});
  GameConfig cfg = Config(env, 1, 3, "z", {{"kind", "greedy"}});
  CHECK(RunGame(cfg).result != GameResult::kAttackerWin);
  cfg.mutation = PolicyMutation::kFrozenPlatoons;
  const auto out = RunGame(cfg);
  CHECK(out.result == GameResult::kAttackerWin);
}

}  // namespace
}  // namespace ddab

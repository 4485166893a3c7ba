// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/adversary.h"

#include "ddab/errors.h"
#include "ddab/verifier.h"
#include "doctest.h"
#include "test_util.h"

namespace ddab {
namespace {

using testing::Chain;

struct Gadget {
  Environment env = BuildGadget({5, 1, 2, -1, false});
  const Graph& g = env.graph();
  NodeId id(const std::string& name) const { return g.Index(name); }
  GameState Turn(const std::string& at, AssetDistribution defender) const {
    GameState s = MakeInitialState(std::move(defender), AssetDistribution::Single(g.num_nodes(), id(at), 1));
    s.phase = Phase::kAttacker;
    return s;
  }
  AssetDistribution Platoon(int l) const {
    std::vector<Rational> x(static_cast<std::size_t>(g.num_nodes()));
    for (int i = l - 1; i <= l + 1; ++i) x[static_cast<std::size_t>(env.path().at(i))] = 1;
    return AssetDistribution(x);
  }
};

TEST_CASE_FIXTURE(Gadget, "scripted attacker") {
  const auto script = ParseScript(nlohmann::json::parse(R"(["stay", [{"from": "q3", "to": "q2"}]])"), g);
  ScriptedAttacker a(script);
  GameState s = Turn("q3", Platoon(2));
  CHECK(a.NextMove(s, env).IsStay());
  const MovePlan second = a.NextMove(s, env);
  REQUIRE(second.flows.size() == 1);
  CHECK(second.flows[0].to == id("q2"));
  CHECK(second.flows[0].amount == Rational(1));
  CHECK(a.complete());
  CHECK(a.NextMove(s, env).IsStay());

  s.phase = Phase::kDefender;
  CHECK_THROWS_AS(a.NextMove(s, env), ProtocolError);
}

TEST_CASE_FIXTURE(Gadget, "partial scripted flows leave the rest in place") {
  const auto script =
      ParseScript(nlohmann::json::parse(R"([[{"from": "q3", "to": "q2", "amount": "3/10"}]])"), g);
  const MovePlan plan = CompleteAttackerPlan(script[0], Turn("q3", Platoon(2)));
  REQUIRE(plan.flows.size() == 2);
  CHECK(plan.flows[1].from == plan.flows[1].to);
  CHECK(plan.flows[1].amount.ToString() == "7/10");
}

TEST_CASE_FIXTURE(Gadget, "gadget plan") {
  const GadgetPlan plan = GadgetAttackPlan(env, 1, 2);
  CHECK(plan.xi == id("xi"));
  CHECK(plan.targets == std::array<NodeId, 3>{id("p2"), id("p3"), id("p4")});
  CHECK(plan.route == std::vector<NodeId>{id("q3"), id("q2"), id("q1"), id("xi")});
  CHECK(env.PathDistance(plan.route.front()) > 1);
  CHECK_THROWS_AS(GadgetAttackPlan(env, 1, 1), InputError);
  CHECK_THROWS_AS(GadgetAttackPlan(env, 1, 0), InputError);
  CHECK_THROWS_AS(GadgetAttackPlan(env, 5, 2), InputError);
  CHECK_THROWS_AS(GadgetAttackPlan(Chain(5), 0, 2), InputError);
}

TEST_CASE_FIXTURE(Gadget, "gadget attacker walks in and strikes the weak target") {
  GadgetAttacker a(GadgetAttackPlan(env, 1, 2), 1);
  CHECK(a.NextMove(Turn("q3", Platoon(2)), env).IsStay());
  CHECK(a.NextMove(Turn("q3", Platoon(2)), env).flows[0].to == id("q2"));
  CHECK(a.NextMove(Turn("q1", Platoon(2)), env).flows[0].to == id("xi"));

  // Two units cannot hold three targets.
  std::vector<Rational> x(static_cast<std::size_t>(g.num_nodes()));
  x[static_cast<std::size_t>(id("p2"))] = 1;
  x[static_cast<std::size_t>(id("p4"))] = 1;
  const MovePlan strike = a.NextMove(Turn("xi", AssetDistribution(x)), env);
  CHECK(strike.flows[0].to == id("p3"));
  CHECK(a.struck());
  CHECK(a.complete());
}

TEST_CASE_FIXTURE(Gadget, "gadget attacker gives up against a full platoon") {
  GadgetAttacker a(GadgetAttackPlan(env, 1, 2));
  CHECK(a.NextMove(Turn("xi", Platoon(2)), env).IsStay());
  CHECK(a.defended());
  CHECK_FALSE(a.struck());
}

TEST_CASE("degenerate gadget with k = 0") {
  const Environment env = BuildGadget({3, 0, 1, -1, false});
  const GadgetPlan plan = GadgetAttackPlan(env, 0, 1);
  CHECK(env.PathDistance(plan.route.front()) == 3);
  CHECK(plan.route.back() == plan.xi);
}

TEST_CASE_FIXTURE(Gadget, "greedy attacker") {
  GreedyAttacker a;
  SUBCASE("takes a winning node") {
    std::vector<Rational> x(static_cast<std::size_t>(g.num_nodes()));
    x[static_cast<std::size_t>(id("p2"))] = 1;
    x[static_cast<std::size_t>(id("p3"))] = 1;
    CHECK(a.NextMove(Turn("xi", AssetDistribution(x)), env).flows[0].to == id("p4"));
  }
  SUBCASE("approaches otherwise") {
    CHECK(a.NextMove(Turn("q3", Platoon(2)), env).flows[0].to == id("q2"));
  }
}

TEST_CASE_FIXTURE(Gadget, "random attacker is reproducible and conserves mass") {
  for (double split : {0.0, 0.5}) {
    RandomAttacker a(42, split);
    RandomAttacker b(42, split);
    GameState s = Turn("xi", Platoon(2));
    for (int i = 0; i < 30; ++i) {
      const MovePlan pa = a.NextMove(s, env);
      CHECK(pa == b.NextMove(s, env));
      GameState next = ApplyMove(g, s, Player::kAttacker, pa);
      CHECK(next.attacker.total() == Rational(1));
      next.phase = Phase::kAttacker;
      if (next.groups.size() > 8) break;
      s = next;
    }
  }
  CHECK_FALSE(RandomAttacker(1).deterministic());
}

TEST_CASE_FIXTURE(Gadget, "strategy parsing") {
  using nlohmann::json;
  CHECK(MakeStrategy(json{{"kind", "greedy"}}, env, 1)->kind() == StrategyKind::kGreedy);
  CHECK(MakeStrategy(json{{"kind", "gadget"}, {"alpha", 2}}, env, 1)->kind() == StrategyKind::kGadget);
  CHECK(MakeStrategy(json{{"kind", "random"}}, env, 1, 9)->kind() == StrategyKind::kRandom);
  CHECK_THROWS_AS(MakeStrategy(json{{"kind", "teleport"}}, env, 1), InputError);
  CHECK_THROWS_AS(MakeStrategy(json{{"kind", "gadget"}}, env, 1), InputError);
  CHECK_THROWS_AS(MakeStrategy(json::array(), env, 1), InputError);
  CHECK_THROWS_AS(ParseScript(json::parse(R"(["jump"])"), g), InputError);
  CHECK_THROWS_AS(ParseScript(json::parse(R"([[{"from": "q3"}]])"), g), InputError);
  CHECK_THROWS(ParseScript(json::parse(R"([[{"from": "q3", "to": "nowhere"}]])"), g));
}

TEST_CASE_FIXTURE(Gadget, "external attacker") {
  ExternalAttacker a;
  const GameState s = Turn("q3", Platoon(2));
  CHECK_THROWS_AS(a.NextMove(s, env), ProtocolError);
  a.Push(MovePlan::Stay(s.attacker));
  CHECK(a.NextMove(s, env).IsStay());
  CHECK(a.Cursor() == "1");
}

}  // namespace
}  // namespace ddab

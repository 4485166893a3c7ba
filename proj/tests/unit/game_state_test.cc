// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/game_state.h"

#include <random>

#include "ddab/errors.h"
#include "doctest.h"
#include "test_util.h"

namespace ddab {
namespace {

using testing::Chain;

struct Fixture {
  Environment env = Chain(5, {"v", "w1", "w2", "far"}, {{"v", "p2"}, {"w1", "v"}, {"w2", "v"}, {"far", "w1"}});
  const Graph& g = env.graph();
  NodeId id(const std::string& name) const { return g.Index(name); }
  AssetDistribution Unit(const std::string& name, Rational amount = 1) const {
    return AssetDistribution::Single(g.num_nodes(), id(name), amount);
  }
  GameState AttackerTurn(AssetDistribution attacker) const {
    GameState s = MakeInitialState(AssetDistribution::Zero(g.num_nodes()), std::move(attacker));
    s.phase = Phase::kAttacker;
    return s;
  }
};

TEST_CASE_FIXTURE(Fixture, "apply_move") {
  SUBCASE("all-stay is the identity") {
    const GameState s = AttackerTurn(Unit("v"));
    const GameState next = ApplyMove(g, s, Player::kAttacker, MovePlan::Stay(s.attacker));
    CHECK(next.attacker == s.attacker);
    CHECK(next.t == s.t);
    CHECK(next.phase == Phase::kEvaluate);
  }
  SUBCASE("single flow along an edge") {
    const GameState s = AttackerTurn(Unit("v"));
    const GameState next = ApplyMove(g, s, Player::kAttacker, {{{id("v"), id("w1"), Rational(1), {}}}});
    CHECK(next.attacker.at(id("w1")) == Rational(1));
    CHECK(next.attacker.at(id("v")).is_zero());
  }
  SUBCASE("0.7/0.3 split makes two labeled groups") {
    const GameState s = AttackerTurn(Unit("v"));
    const MovePlan plan{{{id("v"), id("w1"), Rational(7, 10), "A"}, {id("v"), id("w2"), Rational(3, 10), "A"}}};
    const GameState next = ApplyMove(g, s, Player::kAttacker, plan);
    CHECK(next.attacker.at(id("w1")).ToString() == "7/10");
    CHECK(next.attacker.at(id("w2")).ToString() == "3/10");
    REQUIRE(next.groups.size() == 2);
    CHECK(next.groups[0].label == "A.0");
    CHECK(next.groups[0].node == id("w1"));
    CHECK(next.groups[1].label == "A.1");
    CHECK(next.attacker.total() == Rational(1));
  }
  SUBCASE("errors") {
    const GameState s = AttackerTurn(Unit("v"));
    CHECK_THROWS_AS(ApplyMove(g, s, Player::kAttacker, {{{id("v"), id("far"), Rational(1), {}}}}), IllegalMoveError);
    CHECK_THROWS_AS(ApplyMove(g, s, Player::kAttacker, {{{id("v"), id("w1"), Rational(1, 2), {}}}}),
                    IllegalMoveError);
    CHECK_THROWS_AS(ApplyMove(g, s, Player::kDefender, MovePlan::Stay(s.defender)), ProtocolError);
    CHECK_THROWS_AS(ApplyMove(g, s, Player::kAttacker, {{{id("v"), id("w1"), Rational(0), {}}}}), IllegalMoveError);
  }
}

TEST_CASE_FIXTURE(Fixture, "observe") {
  const auto u1 = env.Visibility(1);
  SUBCASE("on-path attacker is fully visible") {
    const auto obs = Observe(AttackerTurn(Unit("p3")), u1);
    CHECK(obs.visible_attacker.at(id("p3")) == Rational(1));
    CHECK(obs.unobserved_mass.is_zero());
  }
  SUBCASE("just outside the horizon") {
    const auto obs = Observe(AttackerTurn(Unit("w1")), u1);
    CHECK(obs.visible_attacker.empty());
    CHECK(obs.unobserved_mass == Rational(1));
    CHECK(obs.visible_groups.empty());
  }
  SUBCASE("half inside, half outside") {
    std::vector<Rational> amounts(static_cast<std::size_t>(g.num_nodes()));
    amounts[static_cast<std::size_t>(id("p2"))] = Rational(1, 2);
    amounts[static_cast<std::size_t>(id("far"))] = Rational(1, 2);
    const auto obs = Observe(AttackerTurn(AssetDistribution(amounts)), u1);
    CHECK(obs.visible_attacker.size() == 1);
    CHECK(obs.unobserved_mass.ToString() == "1/2");
  }
}

TEST_CASE_FIXTURE(Fixture, "is_safe") {
  GameState s = MakeInitialState(AssetDistribution::Zero(g.num_nodes()), Unit("v"));
  CHECK(IsSafe(s, env.path()));
  s = MakeInitialState(Unit("p3"), Unit("p3"));
  CHECK(IsSafe(s, env.path()));
  s = MakeInitialState(Unit("p2", Rational(1, 5)), Unit("p2", Rational(3, 10)));
  CHECK_FALSE(IsSafe(s, env.path()));
  CHECK(FirstBreach(s, env.path()) == 1);
}

TEST_CASE_FIXTURE(Fixture, "conservation and group consistency under random moves") {
  std::mt19937_64 rng(5);
  const Rational menu[] = {Rational(1, 2), Rational(3, 10), Rational(7, 10), Rational(1, 4)};
  for (int game = 0; game < 100; ++game) {
    GameState s = AttackerTurn(Unit("v"));
    for (int step = 0; step < 12; ++step) {
      MovePlan plan;
      for (const auto& grp : s.groups) {
        std::vector<NodeId> opts{grp.node};
        for (NodeId w : g.neighbors(grp.node)) opts.push_back(w);
        const NodeId a = opts[rng() % opts.size()];
        const NodeId b = opts[rng() % opts.size()];
        const Rational q = menu[rng() % 4];
        if (a != b && s.groups.size() < 6) {
          plan.flows.push_back({grp.node, a, grp.amount * q, grp.label});
          plan.flows.push_back({grp.node, b, grp.amount * (Rational(1) - q), grp.label});
        } else {
          plan.flows.push_back({grp.node, a, grp.amount, grp.label});
        }
      }
      const GameState again = ApplyMove(g, s, Player::kAttacker, plan);
      const GameState next = ApplyMove(g, s, Player::kAttacker, plan);
      CHECK(again.attacker == next.attacker);
      CHECK(next.attacker.total() == Rational(1));
      std::vector<Rational> per_node(static_cast<std::size_t>(g.num_nodes()));
      for (const auto& grp : next.groups) per_node[static_cast<std::size_t>(grp.node)] += grp.amount;
      CHECK(per_node == next.attacker.amounts());
      s = next;
      s.phase = Phase::kAttacker;
    }
  }
}

}  // namespace
}  // namespace ddab

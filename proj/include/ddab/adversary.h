// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_ADVERSARY_H_
#define DDAB_ADVERSARY_H_

#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ddab/game_state.h"
#include "ddab/graph.h"
#include "json.hpp"

namespace ddab {

enum class StrategyKind { kScripted, kRandom, kGreedy, kGadget, kExternal };

std::string_view ToString(StrategyKind kind);

// Attacker strategies see the full game state: the attacker observes the
// defender's move before choosing its own.
class AttackerStrategy {
 public:
  virtual ~AttackerStrategy() = default;

  virtual StrategyKind kind() const = 0;
  // Requires state.phase == Phase::kAttacker.
  virtual MovePlan NextMove(const GameState& state, const Environment& env) = 0;
  // True when identical (state, cursor) always yields the identical move.
  virtual bool deterministic() const { return true; }
  // Fingerprint of private progress (script index, RNG draws, ...).
  virtual std::string Cursor() const { return {}; }
  // Script exhausted / gadget strike resolved. The attacker only stays from
  // then on.
  virtual bool complete() const { return false; }
};

// A scripted flow; a missing amount means "everything the source (or the
// named group) holds".
struct ScriptedFlow {
  NodeId from = 0;
  NodeId to = 0;
  std::optional<Rational> amount;
  std::string group;
};

class ScriptedAttacker : public AttackerStrategy {
 public:
  // Each turn lists flows; mass not mentioned stays put. An empty turn is an
  // all-stay turn.
  explicit ScriptedAttacker(std::vector<std::vector<ScriptedFlow>> turns) : turns_(std::move(turns)) {}

  StrategyKind kind() const override { return StrategyKind::kScripted; }
  MovePlan NextMove(const GameState& state, const Environment& env) override;
  std::string Cursor() const override { return std::to_string(cursor_); }
  bool complete() const override { return cursor_ >= turns_.size(); }

 private:
  std::vector<std::vector<ScriptedFlow>> turns_;
  std::size_t cursor_ = 0;
};

// Shares drawn when the random attacker splits a group.
inline const std::array<Rational, 5>& SplitMenu() {
  static const std::array<Rational, 5> menu = {Rational(1, 2), Rational(3, 10), Rational(7, 10), Rational(1, 4),
                                               Rational(3, 4)};
  return menu;
}

class RandomAttacker : public AttackerStrategy {
 public:
  // Each group moves to a uniformly drawn node of its closed neighborhood;
  // with probability split_probability it instead splits into two shares
  // (q, 1-q) with q drawn from SplitMenu().
  explicit RandomAttacker(std::uint64_t seed, double split_probability = 0.0)
      : rng_(seed), split_probability_(split_probability) {}

  StrategyKind kind() const override { return StrategyKind::kRandom; }
  MovePlan NextMove(const GameState& state, const Environment& env) override;
  bool deterministic() const override { return false; }

 private:
  std::uint64_t Below(std::uint64_t n) { return rng_() % n; }
  double Uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  double split_probability_;
};

// Takes any immediately winning path node; otherwise steps toward the
// nearest path node it would out-mass, else toward the nearest path node.
class GreedyAttacker : public AttackerStrategy {
 public:
  StrategyKind kind() const override { return StrategyKind::kGreedy; }
  MovePlan NextMove(const GameState& state, const Environment& env) override;
};

// The worst-case gadget line: an off-path node xi adjacent to the three
// consecutive targets, reached along an entry chain from outside U_k.
struct GadgetPlan {
  NodeId xi = 0;
  std::array<NodeId, 3> targets{};  // p_{alpha-1}, p_alpha, p_{alpha+1}
  // Staging node (outside U_k) ... xi.
  std::vector<NodeId> route;
};

// Locates the gadget at path index alpha (0-based, 1 <= alpha <= |P|-2).
// Throws InputError when no off-path node touches exactly the three targets
// or no entry route starts outside U_k.
GadgetPlan GadgetAttackPlan(const Environment& env, int k, int alpha);

class GadgetAttacker : public AttackerStrategy {
 public:
  // Stays `wait_turns` turns at the staging node, walks the route, then
  // strikes the lowest-index target the defender does not dominate. If every
  // target is covered it records `defended()` and stays.
  GadgetAttacker(GadgetPlan plan, int wait_turns = 0) : plan_(std::move(plan)), wait_(wait_turns) {}

  StrategyKind kind() const override { return StrategyKind::kGadget; }
  MovePlan NextMove(const GameState& state, const Environment& env) override;
  std::string Cursor() const override;
  bool complete() const override { return struck_ || defended_; }
  bool defended() const { return defended_; }
  bool struck() const { return struck_; }
  const GadgetPlan& plan() const { return plan_; }

 private:
  GadgetPlan plan_;
  int wait_;
  bool defended_ = false;
  bool struck_ = false;
};

// Moves supplied from outside (human player, search driver).
class ExternalAttacker : public AttackerStrategy {
 public:
  StrategyKind kind() const override { return StrategyKind::kExternal; }
  MovePlan NextMove(const GameState& state, const Environment& env) override;
  std::string Cursor() const override { return std::to_string(consumed_); }
  void Push(MovePlan plan) { pending_.push_back(std::move(plan)); }
  bool has_pending() const { return !pending_.empty(); }

 private:
  std::deque<MovePlan> pending_;
  std::size_t consumed_ = 0;
};

// JSON strategy spec:
//   {"kind": "scripted", "turns": ["stay", [{"from": "a", "to": "b", "amount": "1/2", "group": "A"}]]}
//   {"kind": "random", "seed": 7, "split_probability": 0.2}
//   {"kind": "greedy"}
//   {"kind": "gadget", "alpha": 2, "wait": 0}
//   {"kind": "external"}
// `default_seed` applies when a random spec carries no seed.
std::unique_ptr<AttackerStrategy> MakeStrategy(const nlohmann::json& spec, const Environment& env, int k,
                                               std::uint64_t default_seed = 0);

std::vector<std::vector<ScriptedFlow>> ParseScript(const nlohmann::json& turns, const Graph& g);

// Completes a partial flow list against the current attacker state: missing
// amounts become the full holding, unmentioned mass stays.
MovePlan CompleteAttackerPlan(const std::vector<ScriptedFlow>& flows, const GameState& state);

}  // namespace ddab

#endif  // DDAB_ADVERSARY_H_

// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_ENGINE_H_
#define DDAB_ENGINE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ddab/adversary.h"
#include "ddab/defender_policy.h"
#include "ddab/game_state.h"
#include "ddab/graph.h"
#include "ddab/rational.h"
#include "json.hpp"

namespace ddab {

struct GameConfig {
  std::shared_ptr<const Environment> env;
  // Echoed into the trace header: the path string or the inline document.
  nlohmann::json environment_source;
  int k = 0;
  Rational defender_total;
  Rational attacker_total = Rational(1);
  AssetDistribution attacker_start;
  nlohmann::json strategy;
  std::uint64_t seed = 0;
  // 0 selects the default 4|V| + 64.
  int max_steps = 0;
  bool parallel_subgames = false;
  bool trace_advantages = false;
  // Off for bulk rollouts that only need the outcome.
  bool record_trace = true;
  PolicyMutation mutation = PolicyMutation::kNone;
  // Optional assertions checked by CheckExpectations.
  nlohmann::json expect;

  int Horizon() const;
  nlohmann::json ToJson() const;
};

// Config document:
//   { "environment": "env.json" | {inline environment},
//     "k": 1,
//     "defender_total": "15/1" | 15 | "eq9" | "eq9_minus_1",
//     "attacker_total": "1/1",                     (default 1)
//     "attacker_start": "v" | {"v": "1/2", ...},  (a bare name holds all of Y)
//     "strategy": {...},                           (see MakeStrategy)
//     "seed": 0, "max_steps": 0, "parallel_subgames": false,
//     "trace_advantages": false, "policy_mutation": "none",
//     "trace": "out.jsonl", "expect": {...} }
// Relative environment paths resolve against `base_dir`. Throws InputError.
GameConfig ParseGameConfig(const nlohmann::json& doc, const std::string& base_dir = ".");
GameConfig LoadGameConfig(const std::string& file);
PolicyMutation ParseMutation(std::string_view name);
std::string_view ToString(PolicyMutation m);

enum class GameResult { kDefendedHorizon, kDefendedCycle, kAttackerWin };
std::string_view ToString(GameResult r);
GameResult ParseGameResult(std::string_view name);

// A defender sub-force answering one attacker group. The root force "*"
// answers every group not yet seen.
struct SubForce {
  std::string label;
  // Share of the platoon mass; the weights of all forces sum to 1.
  Rational weight;
  PlatoonState platoons;
  // Its group was inside U_k at the previous decision.
  bool seen = false;
};

inline constexpr std::string_view kRootForce = "*";

// Runs the platoon policy from observations only. Each attacker group gets
// its own sub-force; when a group first shows up in U_k it takes its share
// m/Y of the platoon mass from its nearest bound ancestor, in place.
class DefenderController {
 public:
  DefenderController(std::shared_ptr<const Environment> env, int k, Rational defender_total, Rational attacker_total,
                     PolicyMutation mutation = PolicyMutation::kNone);

  // Chooses x(0) from the t = 0 observation (Alg. 2 per sub-force).
  AssetDistribution Initialize(const Observation& obs);
  // One DefenderStep per sub-force. `advantages` (optional) receives the
  // per-node rows seen at decision time.
  MovePlan Step(const Observation& obs, nlohmann::json* advantages = nullptr);

  // Sum of the sub-force platoons plus the static units.
  AssetDistribution Composed() const;
  const std::vector<SubForce>& forces() const { return forces_; }
  const PartitionScheme& scheme() const { return scheme_; }
  const Rational& unit_mass() const { return unit_mass_; }
  // Policy invariant failures seen so far (advantage floor, recentering).
  const std::vector<std::string>& violations() const { return violations_; }
  nlohmann::json ForcesToJson() const;

 private:
  void BindNewGroups(const Observation& obs);

  std::shared_ptr<const Environment> env_;
  int k_;
  Rational attacker_total_;
  PolicyMutation mutation_;
  PartitionScheme scheme_;
  Rational unit_mass_;
  std::vector<SubForce> forces_;  // sorted by label
  std::vector<std::string> violations_;
};

struct ForceSnapshot {
  std::string label;
  Rational weight;
  // Centers of the platoon partitions only, as 0-based path indices.
  std::vector<int> centers;

  friend bool operator==(const ForceSnapshot&, const ForceSnapshot&) = default;
};

struct GameOutcome {
  GameResult result = GameResult::kDefendedHorizon;
  std::optional<int> win_step;
  std::optional<NodeId> witness;
  // Timesteps fully played.
  int steps = 0;
  // Entry 0 after initialization, then one entry per defender action.
  std::vector<std::vector<ForceSnapshot>> platoon_history;
  std::vector<std::string> violations;
  std::vector<nlohmann::json> trace;
};

// Incremental game: construct (initializes x(0)), then DefenderMove,
// AttackerMove and Evaluate in turn, or Step / Run.
class GameRunner {
 public:
  // Throws InputError if the strategy splits or several groups start
  // while parallel_subgames is off.
  GameRunner(GameConfig cfg, std::unique_ptr<AttackerStrategy> strategy);
  explicit GameRunner(GameConfig cfg);

  const GameConfig& config() const { return cfg_; }
  const Environment& env() const { return *cfg_.env; }
  const GameState& state() const { return state_; }
  const DefenderController& defender() const { return defender_; }
  AttackerStrategy& strategy() { return *strategy_; }
  const VisibilityRegion& visibility() const { return region_; }
  bool finished() const { return finished_; }
  const GameOutcome& outcome() const { return outcome_; }
  // Rows from the latest defender decision (empty unless requested).
  const nlohmann::json& last_advantages() const { return last_advantages_; }

  MovePlan DefenderMove();
  // Attacker move from the strategy, or an explicit plan.
  MovePlan AttackerMove();
  void AttackerMove(const MovePlan& plan);
  // Safety check, cycle detection, horizon; advances t unless finished.
  void Evaluate();
  void Step();
  GameOutcome Run();

 private:
  void Record(nlohmann::json record);
  void Finish(GameResult result);
  void Snapshot();
  std::string StateKey() const;
  nlohmann::json PhaseRecord(std::string_view phase, std::string_view mover, const MovePlan* plan) const;

  GameConfig cfg_;
  std::unique_ptr<AttackerStrategy> strategy_;
  VisibilityRegion region_;
  DefenderController defender_;
  GameState state_;
  bool finished_ = false;
  GameOutcome outcome_;
  std::set<std::string> seen_states_;
  nlohmann::json last_advantages_ = nlohmann::json::array();
};

// Plays to the end. RunGame forces parallel_subgames off,
// RunParallelSubgames forces it on; Play keeps the config's choice.
GameOutcome RunGame(GameConfig cfg);
GameOutcome RunParallelSubgames(GameConfig cfg);
GameOutcome Play(const GameConfig& cfg);

// Re-applies every recorded move through ApplyMove and re-evaluates.
// Throws CorruptionError naming the first record that diverges.
GameOutcome Replay(const std::vector<nlohmann::json>& records);

// Empty when the outcome meets cfg.expect. Keys: result, win_step,
// witness, witness_in, steps_at_least, platoon_centers (prefix of the
// single-force center history), violations (expected count).
std::vector<std::string> CheckExpectations(const nlohmann::json& expect, const Environment& env,
                                           const GameOutcome& outcome);

std::vector<std::vector<int>> CenterTrajectory(const GameOutcome& outcome);

}  // namespace ddab

#endif  // DDAB_ENGINE_H_

// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_GAME_STATE_H_
#define DDAB_GAME_STATE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddab/graph.h"
#include "ddab/rational.h"

namespace ddab {

enum class Player { kDefender, kAttacker };
// Whose action is next within a timestep: defender -> attacker -> evaluate.
enum class Phase { kDefender, kAttacker, kEvaluate };

std::string_view ToString(Player p);
std::string_view ToString(Phase p);

// Nonnegative exact amounts per node whose sum equals `total` exactly.
class AssetDistribution {
 public:
  AssetDistribution() = default;
  // Throws InputError on a negative entry.
  explicit AssetDistribution(std::vector<Rational> amounts);
  static AssetDistribution Zero(int num_nodes);
  static AssetDistribution Single(int num_nodes, NodeId node, const Rational& amount);

  int size() const { return static_cast<int>(amounts_.size()); }
  const Rational& at(NodeId v) const { return amounts_.at(static_cast<std::size_t>(v)); }
  const Rational& total() const { return total_; }
  const std::vector<Rational>& amounts() const { return amounts_; }
  // Nodes holding a positive amount, ascending.
  std::vector<NodeId> Support() const;

  friend bool operator==(const AssetDistribution& a, const AssetDistribution& b) {
    return a.amounts_ == b.amounts_;
  }

 private:
  std::vector<Rational> amounts_;
  Rational total_;
};

struct Flow {
  NodeId from = 0;
  NodeId to = 0;
  Rational amount;
  // Attacker flows may name the group they move. Unlabeled flows from a node
  // holding several groups move every group there proportionally.
  std::string group;

  friend bool operator==(const Flow&, const Flow&) = default;
};

// A move in flow form: every unit at a node gets a destination (itself or a
// neighbor). Equivalent to a column-stochastic transition matrix.
struct MovePlan {
  std::vector<Flow> flows;

  static MovePlan Stay(const AssetDistribution& dist);
  // Sums flows that share (from, to, group) and orders them canonically.
  MovePlan Normalized() const;
  bool IsStay() const;

  friend bool operator==(const MovePlan&, const MovePlan&) = default;
};

// A labeled parcel of attacker mass. Labels are hierarchical: a group "A"
// whose flows diverge becomes "A.0", "A.1", ... in flow order. Groups that
// meet at a node keep their own labels.
struct AttackerGroup {
  std::string label;
  NodeId node = 0;
  Rational amount;

  friend bool operator==(const AttackerGroup&, const AttackerGroup&) = default;
};

struct GameState {
  int t = 0;
  AssetDistribution defender;
  AssetDistribution attacker;
  std::vector<AttackerGroup> groups;  // sorted by label
  Phase phase = Phase::kDefender;
};

// Builds the t = 0 state. Attacker groups are labeled "A", "B", ... in
// ascending node order of y(0) ("G26", "G27", ... beyond Z).
GameState MakeInitialState(AssetDistribution defender, AssetDistribution attacker);

// Throws IllegalMoveError unless every flow follows an edge (or stays), has
// a positive amount, and each node's outflow equals its current amount.
void ValidateMove(const Graph& g, const AssetDistribution& dist, const MovePlan& plan);

// Applies the mover's plan. Defender: phase kDefender -> kAttacker.
// Attacker: phase kAttacker -> kEvaluate, and the group ledger is updated.
// Throws ProtocolError on a wrong phase and IllegalMoveError on bad plans.
GameState ApplyMove(const Graph& g, const GameState& state, Player mover, const MovePlan& plan);

// Safe-set test: x_v >= y_v at every path node (ties favor the defender).
bool IsSafe(const GameState& state, const PathSpec& path);
// First path index (0-based) where y_v > x_v, if any.
std::optional<int> FirstBreach(const GameState& state, const PathSpec& path);

// Closes the evaluate phase: t + 1, phase back to kDefender.
GameState AdvanceTimestep(const GameState& state);

struct Observation {
  int k = 0;
  std::map<NodeId, Rational> visible_attacker;  // positive amounts inside U_k only
  Rational unobserved_mass;
  std::vector<AttackerGroup> visible_groups;     // groups located inside U_k
};

// Restriction of the attacker state to the visible region.
Observation Observe(const GameState& state, const VisibilityRegion& region);

}  // namespace ddab

#endif  // DDAB_GAME_STATE_H_

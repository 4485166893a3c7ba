// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_DEFENDER_POLICY_H_
#define DDAB_DEFENDER_POLICY_H_

#include <optional>
#include <string>
#include <vector>

#include "ddab/game_state.h"
#include "ddab/graph.h"
#include "ddab/rational.h"

namespace ddab {

// Number of unit defenders the platoon construction needs against one unit
// attacker: 3 per full block of 2k+3 path nodes plus min(remainder, 3).
// Throws InputError for path_len < 1 or k < 0.
long RequiredUnits(int path_len, int k);

// Necessary and sufficient defender total against attacker mass
// `attacker_total`: RequiredUnits(path_len, k) * attacker_total.
// Throws InputError for a nonpositive attacker total.
Rational RequiredAssets(int path_len, int k, const Rational& attacker_total);

// A block of consecutive path indices [first, last] (0-based, inclusive).
struct Partition {
  int first = 0;
  int last = 0;
  // Middle index; the lower middle for even sizes.
  int center = 0;
  // Size 1 or 2: one static unit per node, never moves.
  bool small = false;

  int size() const { return last - first + 1; }
  bool Contains(int index) const { return index >= first && index <= last; }
};

// Path split from S into blocks of 2k+3; the remainder block (if any) is
// adjacent to T.
struct PartitionScheme {
  int k = 0;
  int path_length = 0;
  std::vector<Partition> partitions;

  int PartitionOf(int path_index) const;
  // Unit slots: 3 per platoon partition, one per small-partition node.
  long Units() const;
};

PartitionScheme BuildPartitions(int path_len, int k);

// Platoon center l per partition, aligned with PartitionScheme::partitions.
// Entries for small partitions hold their center and are never read.
struct PlatoonState {
  std::vector<int> centers;
  // Attacker group this platoon set answers to ("" before binding).
  std::string group;

  friend bool operator==(const PlatoonState& a, const PlatoonState& b) { return a.centers == b.centers; }
};

// Platoons at their partition centers.
PlatoonState CenteredPlatoons(const PartitionScheme& scheme);

// Per path index advantage data for one attacker group. An unobserved group
// has no d_A and no advantage; it ranks above every integer advantage.
struct AdvantageReport {
  std::vector<std::optional<int>> d_attacker;
  std::vector<int> d_defender;
  std::vector<std::optional<int>> advantage;
  std::vector<bool> frontier;

  bool Observed() const;
  // Smallest advantage over platoon partitions (small partitions excluded).
  std::optional<int> MinAdvantage(const PartitionScheme& scheme) const;
};

AdvantageReport ComputeAdvantages(const Environment& env, const PartitionScheme& scheme,
                                  const PlatoonState& platoons, std::optional<NodeId> attacker);

// Where a single bound attacker group sits, if it is inside U_k.
std::optional<NodeId> LocateGroup(const Observation& obs, const std::string& label);

// Fault injection for negative-control tests of the verifier.
enum class PolicyMutation {
  kNone,
  kFrozenPlatoons,   // platoons never move
  kIgnoreNegatives,  // only the recentering branch is applied
};

struct DefenderDecision {
  PlatoonState platoons;
  // Flows for one unit of platoon mass; scale with ScalePlan.
  MovePlan unit_plan;
};

// One DefenderStep against a single attacker group. Per platoon partition:
//  (a) every frontier advantage > 0: step toward the partition center;
//  (b) else some advantage < 0: step toward the most negative one (lowest
//      index on ties), clamped to [first + 1, last - 1];
//  (c) else hold.
// The frontier spans the platoon center to the nearer partition boundary,
// or the whole partition when the platoon is centered or equidistant.
// Throws InternalError when negative advantages flank the platoon on both
// sides (impossible on a shortest path). Mutated policies skip the check.
DefenderDecision DefenderStep(const Environment& env, const PartitionScheme& scheme, const PlatoonState& platoons,
                              std::optional<NodeId> attacker, PolicyMutation mutation = PolicyMutation::kNone);

struct Initialization {
  PlatoonState platoons;
  int iterations = 0;
  // Platoon units plus static small-partition units, each of mass unit_mass.
  AssetDistribution distribution;
};

// Starts centered and repeats DefenderStep in virtual time until every
// advantage is >= -1. Throws InternalError after 2|P| iterations or on a
// stall. A mutated policy stops quietly when it stalls.
Initialization Initialize(const Environment& env, const PartitionScheme& scheme, std::optional<NodeId> attacker,
                          const Rational& unit_mass = Rational(1), PolicyMutation mutation = PolicyMutation::kNone);

// Per-node mass of the three-unit platoons only.
AssetDistribution PlatoonDistribution(const Environment& env, const PartitionScheme& scheme,
                                      const PlatoonState& platoons, const Rational& unit_mass);
// Per-node mass of the static small-partition units only.
AssetDistribution StaticDistribution(const Environment& env, const PartitionScheme& scheme, const Rational& unit_mass);

MovePlan ScalePlan(const MovePlan& plan, const Rational& factor);

}  // namespace ddab

#endif  // DDAB_DEFENDER_POLICY_H_

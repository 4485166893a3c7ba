// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_VERIFIER_H_
#define DDAB_VERIFIER_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddab/defender_policy.h"
#include "ddab/engine.h"
#include "ddab/game_state.h"
#include "ddab/graph.h"
#include "ddab/rational.h"
#include "json.hpp"

namespace ddab {

// ---------------------------------------------------------------- gadgets

// Path p1..pN plus an off-path node "xi" adjacent to the path indices
// alpha-1, alpha, alpha+1 (0-based) and an entry chain xi - q1 - ... - qL.
// The outer ring adds "o" next to qL and a chain o - r1 - ... - rk ending
// next to p_alpha, so the attacker can reenter U_k at two places.
struct GadgetSpec {
  int path_len = 5;
  int k = 1;
  int alpha = 2;
  // < 0 selects k + 2.
  int entry_chain_length = -1;
  bool outer_ring = false;

  int ChainLength() const { return entry_chain_length < 0 ? k + 2 : entry_chain_length; }
  nlohmann::json ToJson() const;
};

// Throws InputError for alpha outside [1, path_len - 2], k < 0 or a chain
// too short to start outside U_k.
Environment BuildGadget(const GadgetSpec& spec);

// ---------------------------------------------------------------- sufficiency

enum class Verdict { kSafeClosed, kBreachFound };
std::string_view ToString(Verdict v);

// A concrete attacker line: start node, then one destination per turn. The
// last move lands on `target`, which the defender does not dominate.
struct BreachLine {
  NodeId start = 0;
  std::vector<NodeId> moves;
  NodeId target = 0;
  // Timestep of the losing evaluation (moves.size() - 1).
  int win_step = 0;
};

struct ReachabilityResult {
  Verdict verdict = Verdict::kSafeClosed;
  long long explored_states = 0;
  // The OUTSIDE abstraction was used for the reported verdict.
  bool abstract = false;
  std::optional<BreachLine> breach;
};

struct SufficiencyOptions {
  // Collapse every position with d* > k into one OUTSIDE token that may
  // reenter at any node with d* = k. Over-approximates the attacker.
  bool abstract = true;
  long long state_budget = 5'000'000;
  PolicyMutation mutation = PolicyMutation::kNone;
};

// Breadth-first closure over (attacker node or OUTSIDE, platoon centers) for
// a unit attacker against the platoon policy with defender total X. Every
// start with [x(0), y(0)] in the safe set is explored. An abstract breach is
// re-checked on the concrete graph and only a confirmed line is reported.
// Throws BudgetExceededError when the state budget runs out.
ReachabilityResult VerifySufficiency(const Environment& env, int k, const Rational& defender_total,
                                     const SufficiencyOptions& options = {});

// Scripted engine config that plays `line` against the policy.
GameConfig BreachReplayConfig(std::shared_ptr<const Environment> env, int k, const Rational& defender_total,
                              const BreachLine& line, PolicyMutation mutation = PolicyMutation::kNone);

// ---------------------------------------------------------------- necessity

// True iff three distinct units of the on-path deployment can be matched to
// the targets alpha-1, alpha, alpha+1, each within k hops. Amounts are
// floored per node in units of `unit` (the attacker mass). Throws
// InputError for off-path mass or alpha outside [1, |P| - 2].
bool ThreeWindowCoverage(const Environment& env, int k, const AssetDistribution& deployment, int alpha,
                         const Rational& unit = Rational(1));

struct WindowViolation {
  enum class Kind { kUnreachable, kTriple };
  Kind kind = Kind::kTriple;
  // Inclusive 0-based path index range whose units were considered.
  int first = 0;
  int last = 0;
  // Triple center (kTriple) or the unreachable node (kUnreachable).
  int index = 0;
  long units = 0;
};

std::string_view ToString(WindowViolation::Kind kind);

// Unit counts per path index. Reports every path node with no unit within k
// hops and every triple whose 2k+3 window cannot be 3-matched.
std::vector<WindowViolation> NecessaryWindowAudit(int path_len, int k, const std::vector<long>& units);

// Fewest on-path units such that every triple can be 3-matched within k
// hops, by exact sliding-window dynamic programming over all deployments.
// Throws BudgetExceededError when the window state space is too large.
long MinimumCoveringDeployment(int path_len, int k);

enum class NecessityVerdict { kAttackerWins, kDefenseHeld };
std::string_view ToString(NecessityVerdict v);

struct NecessityResult {
  NecessityVerdict verdict = NecessityVerdict::kDefenseHeld;
  long units = 0;           // floor(X / Y)
  long minimum_units = 0;   // MinimumCoveringDeployment
  // Gadget attacker at spec.alpha against the implemented policy.
  GameOutcome policy_game;
  bool policy_breached = false;
  // Violations of the policy's own x(0).
  std::vector<WindowViolation> policy_violations;
};

// ATTACKER_WINS iff no on-path deployment of floor(X/Y) units 3-covers every
// triple, so for each deployment some gadget strike succeeds. The policy
// game supplies a replayable witness trace.
NecessityResult VerifyNecessity(const GadgetSpec& spec, const Rational& defender_total,
                                const Rational& attacker_total = Rational(1));
// Same on any environment holding the gadget structure at alpha (e.g. a
// decorated corpus entry).
NecessityResult VerifyNecessity(std::shared_ptr<const Environment> env, int k, int alpha,
                                const Rational& defender_total, const Rational& attacker_total = Rational(1));

}  // namespace ddab

#endif  // DDAB_VERIFIER_H_

// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/verifier.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdint>
#include <deque>
#include <unordered_map>

#include "ddab/environment_io.h"
#include "ddab/errors.h"
#include "ddab/matching.h"

namespace ddab {

using nlohmann::json;

// ---------------------------------------------------------------- gadgets

json GadgetSpec::ToJson() const {
  return {{"path_len", path_len},
          {"k", k},
          {"alpha", alpha},
          {"entry_chain_length", ChainLength()},
          {"outer_ring", outer_ring}};
}

Environment BuildGadget(const GadgetSpec& spec) {
  const int n = spec.path_len;
  const int len = spec.ChainLength();
  if (spec.k < 0) throw InputError("gadget k must be >= 0");
  if (spec.alpha < 1 || spec.alpha > n - 2) {
    throw InputError("gadget alpha " + std::to_string(spec.alpha) + " must lie in [1, path_len - 2]");
  }
  if (len < spec.k) {
    throw InputError("entry chain of length " + std::to_string(len) + " cannot start outside U_" +
                     std::to_string(spec.k));
  }
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  auto p = [](int i) { return "p" + std::to_string(i + 1); };
  for (int i = 0; i < n; ++i) {
    names.push_back(p(i));
    if (i > 0) edges.emplace_back(p(i - 1), p(i));
  }
  names.push_back("xi");
  for (int d = -1; d <= 1; ++d) edges.emplace_back("xi", p(spec.alpha + d));
  std::string prev = "xi";
  for (int j = 1; j <= len; ++j) {
    const std::string q = "q" + std::to_string(j);
    names.push_back(q);
    edges.emplace_back(prev, q);
    prev = q;
  }
  if (spec.outer_ring) {
    names.push_back("o");
    edges.emplace_back(prev, "o");
    std::string last = "o";
    for (int j = 1; j <= spec.k; ++j) {
      const std::string r = "r" + std::to_string(j);
      names.push_back(r);
      edges.emplace_back(last, r);
      last = r;
    }
    edges.emplace_back(last, p(spec.alpha));
  }
  return Environment::Create(Graph::FromNamedEdges(std::move(names), edges), PathSpec{[&] {
                               std::vector<NodeId> nodes;
                               for (int i = 0; i < n; ++i) nodes.push_back(i);
                               return nodes;
                             }()});
}

// ---------------------------------------------------------------- sufficiency

std::string_view ToString(Verdict v) { return v == Verdict::kSafeClosed ? "SAFE_CLOSED" : "BREACH_FOUND"; }

namespace {

constexpr int kOutside = -1;

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

class Explorer {
 public:
  Explorer(const Environment& env, int k, const Rational& defender_total, bool abstract, long long budget,
           PolicyMutation mutation)
      : env_(env),
        k_(k),
        abstract_(abstract),
        budget_(budget),
        mutation_(mutation),
        scheme_(BuildPartitions(env.path_length(), k)),
        unit_mass_(defender_total / Rational(scheme_.Units())),
        unit_covers_(!(unit_mass_ < Rational(1))) {}

  ReachabilityResult Run() {
    ReachabilityResult result;
    result.abstract = abstract_;
    bool has_outside = false;
    for (NodeId v = 0; v < env_.num_nodes(); ++v) {
      if (env_.PathDistance(v) > k_) {
        has_outside = true;
        if (abstract_) continue;
      }
      AddStart(v);
    }
    if (abstract_ && has_outside) AddStart(kOutside);

    std::vector<NodeId> reentry;
    for (NodeId v = 0; v < env_.num_nodes(); ++v) {
      if (env_.PathDistance(v) == k_) reentry.push_back(v);
    }
    for (std::size_t id = 0; id < states_.size(); ++id) {
      const std::vector<int> key = states_[id];
      const int pos = key[0];
      PlatoonState platoons;
      platoons.centers.assign(key.begin() + 1, key.end());
      const PlatoonState next = DefenderStep(env_, scheme_, platoons, Located(pos), mutation_).platoons;

      std::vector<int> dests;
      if (pos == kOutside) {
        dests.push_back(kOutside);
        dests.insert(dests.end(), reentry.begin(), reentry.end());
      } else {
        dests.push_back(pos);
        for (NodeId w : env_.graph().neighbors(pos)) {
          dests.push_back(abstract_ && env_.PathDistance(w) > k_ ? kOutside : w);
        }
      }
      for (int dest : dests) {
        if (dest != kOutside && Breached(dest, next)) {
          result.verdict = Verdict::kBreachFound;
          result.breach = Line(static_cast<int>(id), dest);
          result.explored_states = static_cast<long long>(states_.size());
          return result;
        }
        std::vector<int> child{dest};
        child.insert(child.end(), next.centers.begin(), next.centers.end());
        Add(std::move(child), static_cast<int>(id));
      }
    }
    result.explored_states = static_cast<long long>(states_.size());
    return result;
  }

 private:
  std::optional<NodeId> Located(int pos) const {
    if (pos == kOutside || env_.PathDistance(pos) > k_) return std::nullopt;
    return pos;
  }

  bool Breached(NodeId v, const PlatoonState& platoons) const {
    const auto idx = env_.PathIndex(v);
    if (!idx) return false;
    const auto& part = scheme_.partitions[static_cast<std::size_t>(scheme_.PartitionOf(*idx))];
    const bool unit = part.small || std::abs(*idx - platoons.centers[static_cast<std::size_t>(
                                                    scheme_.PartitionOf(*idx))]) <= 1;
    return !(unit && unit_covers_);
  }

  void AddStart(int pos) {
    const auto init = Initialize(env_, scheme_, Located(pos), unit_mass_, mutation_);
    // Starts outside the safe set are not legal initial conditions.
    if (pos != kOutside && Breached(pos, init.platoons)) return;
    std::vector<int> key{pos};
    key.insert(key.end(), init.platoons.centers.begin(), init.platoons.centers.end());
    Add(std::move(key), -1);
  }

  void Add(std::vector<int> key, int parent) {
    if (index_.count(key)) return;
    if (static_cast<long long>(states_.size()) >= budget_) {
      throw BudgetExceededError("state budget of " + std::to_string(budget_) + " exhausted",
                                static_cast<long long>(states_.size()));
    }
    index_.emplace(key, static_cast<int>(states_.size()));
    states_.push_back(std::move(key));
    parents_.push_back(parent);
  }

  BreachLine Line(int id, NodeId target) const {
    std::vector<int> positions{target};
    for (int s = id; s >= 0; s = parents_[static_cast<std::size_t>(s)]) positions.push_back(states_[static_cast<std::size_t>(s)][0]);
    std::reverse(positions.begin(), positions.end());
    BreachLine line;
    line.start = positions.front();
    line.moves.assign(positions.begin() + 1, positions.end());
    line.target = target;
    line.win_step = static_cast<int>(line.moves.size()) - 1;
    return line;
  }

  const Environment& env_;
  int k_;
  bool abstract_;
  long long budget_;
  PolicyMutation mutation_;
  PartitionScheme scheme_;
  Rational unit_mass_;
  bool unit_covers_;
  std::vector<std::vector<int>> states_;
  std::vector<int> parents_;
  std::unordered_map<std::vector<int>, int, VecHash> index_;
};

}  // namespace

ReachabilityResult VerifySufficiency(const Environment& env, int k, const Rational& defender_total,
                                     const SufficiencyOptions& options) {
  if (k < 0) throw InputError("k must be >= 0");
  if (defender_total.sign() <= 0) throw InputError("defender total must be positive");
  ReachabilityResult result =
      Explorer(env, k, defender_total, options.abstract, options.state_budget, options.mutation).Run();
  if (result.verdict == Verdict::kBreachFound && result.abstract) {
    // The abstract line may pass through OUTSIDE; confirm on the real graph.
    const long long abstract_states = result.explored_states;
    result = Explorer(env, k, defender_total, false, options.state_budget, options.mutation).Run();
    result.explored_states += abstract_states;
  }
  return result;
}

GameConfig BreachReplayConfig(std::shared_ptr<const Environment> env, int k, const Rational& defender_total,
                              const BreachLine& line, PolicyMutation mutation) {
  GameConfig cfg;
  const Graph& g = env->graph();
  cfg.environment_source = EnvironmentToJson(*env);
  cfg.k = k;
  cfg.defender_total = defender_total;
  cfg.attacker_total = Rational(1);
  cfg.attacker_start = AssetDistribution::Single(env->num_nodes(), line.start, Rational(1));
  json turns = json::array();
  NodeId at = line.start;
  for (NodeId to : line.moves) {
    turns.push_back(json::array({{{"from", g.name(at)}, {"to", g.name(to)}}}));
    at = to;
  }
  cfg.strategy = {{"kind", "scripted"}, {"turns", turns}};
  cfg.max_steps = static_cast<int>(line.moves.size()) + 1;
  cfg.mutation = mutation;
  cfg.env = std::move(env);
  return cfg;
}

// ---------------------------------------------------------------- necessity

bool ThreeWindowCoverage(const Environment& env, int k, const AssetDistribution& deployment, int alpha,
                         const Rational& unit) {
  const PathSpec& path = env.path();
  if (alpha < 1 || alpha > path.size() - 2) throw InputError("alpha must lie in [1, |P| - 2]");
  if (unit.sign() <= 0) throw InputError("unit must be positive");
  const std::array<NodeId, 3> targets = {path.at(alpha - 1), path.at(alpha), path.at(alpha + 1)};
  std::vector<std::vector<int>> adjacency;
  for (NodeId v : deployment.Support()) {
    if (!env.OnPath(v)) throw InputError("deployment holds mass off the path at '" + env.graph().name(v) + "'");
    const long units = std::min<long>((deployment.at(v) / unit).Floor(), 3);
    std::vector<int> reach;
    for (int r = 0; r < 3; ++r) {
      if (env.Distance(v, targets[static_cast<std::size_t>(r)]) <= k) reach.push_back(r);
    }
    for (long u = 0; u < units; ++u) adjacency.push_back(reach);
  }
  return MaxBipartiteMatching(adjacency, 3) == 3;
}

std::string_view ToString(WindowViolation::Kind kind) {
  return kind == WindowViolation::Kind::kUnreachable ? "unreachable" : "triple";
}

std::vector<WindowViolation> NecessaryWindowAudit(int path_len, int k, const std::vector<long>& units) {
  if (static_cast<int>(units.size()) != path_len) throw InputError("unit vector does not match the path length");
  if (k < 0) throw InputError("k must be >= 0");
  std::vector<WindowViolation> out;
  auto sum = [&](int first, int last) {
    long s = 0;
    for (int j = first; j <= last; ++j) s += units[static_cast<std::size_t>(j)];
    return s;
  };
  for (int i = 0; i < path_len; ++i) {
    const int first = std::max(i - k, 0);
    const int last = std::min(i + k, path_len - 1);
    if (sum(first, last) == 0) out.push_back({WindowViolation::Kind::kUnreachable, first, last, i, 0});
  }
  for (int alpha = 1; alpha + 1 < path_len; ++alpha) {
    const int first = std::max(alpha - 1 - k, 0);
    const int last = std::min(alpha + 1 + k, path_len - 1);
    std::vector<std::vector<int>> adjacency;
    for (int j = first; j <= last; ++j) {
      std::vector<int> reach;
      for (int r = 0; r < 3; ++r) {
        if (std::abs(j - (alpha - 1 + r)) <= k) reach.push_back(r);
      }
      for (long u = 0; u < std::min<long>(units[static_cast<std::size_t>(j)], 3); ++u) adjacency.push_back(reach);
    }
    if (MaxBipartiteMatching(adjacency, 3) < 3) {
      out.push_back({WindowViolation::Kind::kTriple, first, last, alpha, sum(first, last)});
    }
  }
  return out;
}

long MinimumCoveringDeployment(int path_len, int k) {
  if (path_len < 1) throw InputError("path length must be >= 1");
  if (k < 0) throw InputError("k must be >= 0");
  // No triples: every node needs its own unit.
  if (path_len < 3) return path_len;
  // Every unit reaches every target.
  if (k >= path_len - 1) return 3;
  const int span = 2 * k + 3;  // units that can serve one triple
  const int kept = span - 1;
  // Flat tables of 4^kept costs; beyond 4^11 entries the search gives up.
  if (kept > 11) throw BudgetExceededError("window of " + std::to_string(span) + " nodes is too wide", 0);

  // Hall's condition per triple: for each target subset, the units within k
  // of some member must number at least the subset size.
  std::array<std::vector<int>, 8> reach;
  for (int subset = 1; subset < 8; ++subset) {
    for (int o = 0; o < span; ++o) {
      for (int r = 0; r < 3; ++r) {
        if ((subset >> r & 1) && std::abs(o - (k + r)) <= k) {
          reach[static_cast<std::size_t>(subset)].push_back(o);
          break;
        }
      }
    }
  }
  auto coverable = [&](std::uint64_t window) {
    for (int subset = 1; subset < 8; ++subset) {
      int have = 0;
      for (int o : reach[static_cast<std::size_t>(subset)]) have += static_cast<int>(window >> (2 * o) & 3);
      if (have < __builtin_popcount(static_cast<unsigned>(subset))) return false;
    }
    return true;
  };

  // State: counts of the last `kept` positions, oldest in the low bits.
  constexpr int kUnset = -1;
  const std::size_t states = std::size_t{1} << (2 * kept);
  std::vector<int> frontier(states, kUnset);
  std::vector<int> next(states, kUnset);
  frontier[0] = 0;
  for (int j = 0; j <= path_len - 1 + k + 1; ++j) {
    const int alpha = j - k - 1;
    const bool check = alpha >= 1 && alpha <= path_len - 2;
    const int max_c = j < path_len ? 3 : 0;
    std::fill(next.begin(), next.end(), kUnset);
    for (std::size_t state = 0; state < states; ++state) {
      const int cost = frontier[state];
      if (cost == kUnset) continue;
      for (int c = 0; c <= max_c; ++c) {
        const std::uint64_t window = state | static_cast<std::uint64_t>(c) << (2 * kept);
        if (check && !coverable(window)) continue;
        int& slot = next[static_cast<std::size_t>(window >> 2)];
        if (slot == kUnset || slot > cost + c) slot = cost + c;
      }
    }
    frontier.swap(next);
  }
  long best = -1;
  for (int cost : frontier) {
    if (cost != kUnset && (best < 0 || cost < best)) best = cost;
  }
  if (best < 0) throw InternalError("no covering deployment found");
  return best;
}

std::string_view ToString(NecessityVerdict v) {
  return v == NecessityVerdict::kAttackerWins ? "ATTACKER_WINS" : "DEFENSE_HELD";
}

NecessityResult VerifyNecessity(const GadgetSpec& spec, const Rational& defender_total,
                                const Rational& attacker_total) {
  return VerifyNecessity(std::make_shared<const Environment>(BuildGadget(spec)), spec.k, spec.alpha, defender_total,
                         attacker_total);
}

NecessityResult VerifyNecessity(std::shared_ptr<const Environment> env, int k, int alpha,
                                const Rational& defender_total, const Rational& attacker_total) {
  if (defender_total.sign() <= 0 || attacker_total.sign() <= 0) throw InputError("asset totals must be positive");
  NecessityResult result;
  result.units = (defender_total / attacker_total).Floor();
  result.minimum_units = MinimumCoveringDeployment(env->path_length(), k);
  result.verdict =
      result.units < result.minimum_units ? NecessityVerdict::kAttackerWins : NecessityVerdict::kDefenseHeld;

  const GadgetPlan plan = GadgetAttackPlan(*env, k, alpha);
  GameConfig cfg;
  cfg.env = env;
  cfg.environment_source = EnvironmentToJson(*env);
  cfg.k = k;
  cfg.defender_total = defender_total;
  cfg.attacker_total = attacker_total;
  cfg.attacker_start = AssetDistribution::Single(env->num_nodes(), plan.route.front(), attacker_total);
  cfg.strategy = {{"kind", "gadget"}, {"alpha", alpha}};
  GameRunner runner(cfg);
  std::vector<long> units;
  for (NodeId v : env->path().nodes) units.push_back((runner.state().defender.at(v) / attacker_total).Floor());
  result.policy_violations = NecessaryWindowAudit(env->path_length(), k, units);
  result.policy_game = runner.Run();
  result.policy_breached = result.policy_game.result == GameResult::kAttackerWin;
  return result;
}

}  // namespace ddab

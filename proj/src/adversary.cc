// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/adversary.h"

#include <algorithm>
#include <deque>
#include <map>

#include "ddab/errors.h"

namespace ddab {
namespace {

const AttackerGroup* FindGroup(const GameState& state, const std::string& label) {
  for (const auto& g : state.groups) {
    if (g.label == label) return &g;
  }
  return nullptr;
}

void RequireAttackerPhase(const GameState& state) {
  if (state.phase != Phase::kAttacker) throw ProtocolError("attacker asked to move outside its phase");
}

MovePlan StayAll(const GameState& state) {
  MovePlan plan;
  for (const auto& g : state.groups) plan.flows.push_back({g.node, g.node, g.amount, g.label});
  return plan;
}

// Neighbor of `from` one hop closer to `to` (lowest id), or `from` itself.
NodeId StepToward(const Environment& env, NodeId from, NodeId to) {
  if (from == to) return from;
  for (NodeId w : env.graph().neighbors(from)) {
    if (env.Distance(w, to) == env.Distance(from, to) - 1) return w;
  }
  return from;
}

}  // namespace

std::string_view ToString(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kScripted:
      return "scripted";
    case StrategyKind::kRandom:
      return "random";
    case StrategyKind::kGreedy:
      return "greedy";
    case StrategyKind::kGadget:
      return "gadget";
    case StrategyKind::kExternal:
      return "external";
  }
  return "?";
}

MovePlan CompleteAttackerPlan(const std::vector<ScriptedFlow>& flows, const GameState& state) {
  MovePlan plan;
  std::map<NodeId, Rational> listed_node;
  std::map<std::string, Rational> listed_group;
  std::map<NodeId, bool> labeled;
  for (const auto& sf : flows) {
    Rational amount;
    if (sf.amount) {
      amount = *sf.amount;
    } else if (!sf.group.empty()) {
      const auto* g = FindGroup(state, sf.group);
      if (!g) throw IllegalMoveError("scripted flow names unknown group '" + sf.group + "'");
      amount = g->amount;
    } else {
      amount = state.attacker.at(sf.from);
    }
    if (amount.is_zero()) continue;
    plan.flows.push_back({sf.from, sf.to, amount, sf.group});
    listed_node[sf.from] += amount;
    if (!sf.group.empty()) {
      listed_group[sf.group] += amount;
      labeled[sf.from] = true;
    }
  }
  for (NodeId v : state.attacker.Support()) {
    if (labeled[v]) {
      for (const auto& g : state.groups) {
        if (g.node != v) continue;
        const Rational rest = g.amount - listed_group[g.label];
        if (rest.sign() > 0) plan.flows.push_back({v, v, rest, g.label});
      }
    } else {
      const Rational rest = state.attacker.at(v) - listed_node[v];
      if (rest.sign() > 0) plan.flows.push_back({v, v, rest, {}});
    }
  }
  return plan;
}

MovePlan ScriptedAttacker::NextMove(const GameState& state, const Environment& env) {
  RequireAttackerPhase(state);
  (void)env;
  if (complete()) return StayAll(state);
  return CompleteAttackerPlan(turns_[cursor_++], state);
}

MovePlan RandomAttacker::NextMove(const GameState& state, const Environment& env) {
  RequireAttackerPhase(state);
  MovePlan plan;
  for (const auto& g : state.groups) {
    std::vector<NodeId> options{g.node};
    const auto& nbrs = env.graph().neighbors(g.node);
    options.insert(options.end(), nbrs.begin(), nbrs.end());
    if (split_probability_ > 0.0 && options.size() >= 2 && Uniform() < split_probability_) {
      const Rational& q = SplitMenu()[Below(SplitMenu().size())];
      const std::size_t i = Below(options.size());
      std::size_t j = Below(options.size() - 1);
      if (j >= i) ++j;
      plan.flows.push_back({g.node, options[i], g.amount * q, g.label});
      plan.flows.push_back({g.node, options[j], g.amount * (Rational(1) - q), g.label});
    } else {
      plan.flows.push_back({g.node, options[Below(options.size())], g.amount, g.label});
    }
  }
  return plan;
}

MovePlan GreedyAttacker::NextMove(const GameState& state, const Environment& env) {
  RequireAttackerPhase(state);
  const PathSpec& path = env.path();
  MovePlan plan;
  for (const auto& g : state.groups) {
    std::vector<NodeId> closed{g.node};
    const auto& nbrs = env.graph().neighbors(g.node);
    closed.insert(closed.end(), nbrs.begin(), nbrs.end());

    auto others_at = [&](NodeId p) {
      return state.attacker.at(p) - (p == g.node ? g.amount : Rational(0));
    };
    std::optional<int> winning;
    for (NodeId w : closed) {
      const auto idx = env.PathIndex(w);
      if (idx && others_at(w) + g.amount > state.defender.at(w) && (!winning || *idx < *winning)) winning = idx;
    }
    NodeId dest = g.node;
    if (winning) {
      dest = path.at(*winning);
    } else {
      std::optional<std::pair<int, int>> best;  // (distance, path index)
      for (bool require_weak : {true, false}) {
        for (int i = 0; i < path.size(); ++i) {
          if (require_weak && !(state.defender.at(path.at(i)) < g.amount)) continue;
          const std::pair<int, int> key{env.Distance(g.node, path.at(i)), i};
          if (!best || key < *best) best = key;
        }
        if (best) break;
      }
      dest = StepToward(env, g.node, path.at(best->second));
    }
    plan.flows.push_back({g.node, dest, g.amount, g.label});
  }
  return plan;
}

GadgetPlan GadgetAttackPlan(const Environment& env, int k, int alpha) {
  const PathSpec& path = env.path();
  if (alpha < 1 || alpha > path.size() - 2) {
    throw InputError("gadget alpha " + std::to_string(alpha) + " must lie in [1, |P|-2]");
  }
  GadgetPlan plan;
  plan.targets = {path.at(alpha - 1), path.at(alpha), path.at(alpha + 1)};
  std::optional<NodeId> xi;
  for (NodeId v = 0; v < env.num_nodes() && !xi; ++v) {
    if (env.OnPath(v)) continue;
    std::vector<int> touched;
    for (NodeId w : env.graph().neighbors(v)) {
      if (const auto idx = env.PathIndex(w)) touched.push_back(*idx);
    }
    std::sort(touched.begin(), touched.end());
    if (touched == std::vector<int>{alpha - 1, alpha, alpha + 1}) xi = v;
  }
  if (!xi) {
    throw InputError("gadget structure missing: no off-path node adjacent to exactly path indices " +
                     std::to_string(alpha - 1) + ".." + std::to_string(alpha + 1));
  }
  plan.xi = *xi;

  // BFS over off-path nodes from xi; stage at the node farthest from the path.
  std::vector<NodeId> parent(static_cast<std::size_t>(env.num_nodes()), -1);
  std::vector<int> hops(static_cast<std::size_t>(env.num_nodes()), -1);
  std::deque<NodeId> queue{*xi};
  hops[*xi] = 0;
  NodeId staging = *xi;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    const auto better = [&](NodeId a, NodeId b) {
      if (env.PathDistance(a) != env.PathDistance(b)) return env.PathDistance(a) > env.PathDistance(b);
      if (hops[a] != hops[b]) return hops[a] < hops[b];
      return a < b;
    };
    if (better(u, staging)) staging = u;
    for (NodeId w : env.graph().neighbors(u)) {
      if (env.OnPath(w) || hops[w] >= 0) continue;
      hops[w] = hops[u] + 1;
      parent[w] = u;
      queue.push_back(w);
    }
  }
  if (env.PathDistance(staging) <= k) {
    throw InputError("gadget structure missing: no entry route from outside the visible region (k = " +
                     std::to_string(k) + ")");
  }
  for (NodeId v = staging; v != -1; v = parent[v]) plan.route.push_back(v);
  return plan;
}

MovePlan GadgetAttacker::NextMove(const GameState& state, const Environment& env) {
  RequireAttackerPhase(state);
  if (state.groups.empty()) return {};
  if (complete() || state.groups.size() != 1) return StayAll(state);
  if (wait_ > 0) {
    --wait_;
    return StayAll(state);
  }
  const AttackerGroup& g = state.groups.front();
  NodeId dest = g.node;
  if (g.node == plan_.xi) {
    for (NodeId target : plan_.targets) {
      if (state.defender.at(target) < state.attacker.at(target) + g.amount) {
        dest = target;
        struck_ = true;
        break;
      }
    }
    if (!struck_) defended_ = true;
  } else {
    const auto it = std::find(plan_.route.begin(), plan_.route.end(), g.node);
    dest = (it != plan_.route.end() && it + 1 != plan_.route.end()) ? *(it + 1) : StepToward(env, g.node, plan_.xi);
  }
  MovePlan plan;
  plan.flows.push_back({g.node, dest, g.amount, g.label});
  return plan;
}

std::string GadgetAttacker::Cursor() const {
  return std::to_string(wait_) + (struck_ ? "S" : "") + (defended_ ? "D" : "");
}

MovePlan ExternalAttacker::NextMove(const GameState& state, const Environment& env) {
  RequireAttackerPhase(state);
  (void)env;
  if (pending_.empty()) throw ProtocolError("no external attacker move available");
  MovePlan plan = std::move(pending_.front());
  pending_.pop_front();
  ++consumed_;
  return plan;
}

std::vector<std::vector<ScriptedFlow>> ParseScript(const nlohmann::json& turns, const Graph& g) {
  if (!turns.is_array()) throw InputError("scripted strategy requires a 'turns' array");
  std::vector<std::vector<ScriptedFlow>> script;
  for (const auto& turn : turns) {
    std::vector<ScriptedFlow> flows;
    if (turn.is_string()) {
      if (turn.get<std::string>() != "stay") throw InputError("unknown scripted turn '" + turn.get<std::string>() + "'");
    } else if (turn.is_array()) {
      for (const auto& f : turn) {
        if (!f.is_object() || !f.contains("from") || !f.contains("to")) {
          throw InputError("scripted flow needs 'from' and 'to'");
        }
        ScriptedFlow sf;
        sf.from = g.Index(f.at("from").get<std::string>());
        sf.to = g.Index(f.at("to").get<std::string>());
        if (f.contains("amount")) sf.amount = Rational::Parse(f.at("amount").get<std::string>());
        if (f.contains("group")) sf.group = f.at("group").get<std::string>();
        flows.push_back(std::move(sf));
      }
    } else {
      throw InputError("scripted turn must be \"stay\" or a flow list");
    }
    script.push_back(std::move(flows));
  }
  return script;
}

std::unique_ptr<AttackerStrategy> MakeStrategy(const nlohmann::json& spec, const Environment& env, int k,
                                               std::uint64_t default_seed) {
  if (!spec.is_object() || !spec.contains("kind")) throw InputError("strategy spec needs a 'kind'");
  const auto kind = spec.at("kind").get<std::string>();
  if (kind == "scripted") {
    return std::make_unique<ScriptedAttacker>(ParseScript(spec.value("turns", nlohmann::json::array()), env.graph()));
  }
  if (kind == "random") {
    const auto seed = spec.value("seed", default_seed);
    return std::make_unique<RandomAttacker>(seed, spec.value("split_probability", 0.0));
  }
  if (kind == "greedy") return std::make_unique<GreedyAttacker>();
  if (kind == "gadget") {
    if (!spec.contains("alpha")) throw InputError("gadget strategy needs 'alpha'");
    return std::make_unique<GadgetAttacker>(GadgetAttackPlan(env, k, spec.at("alpha").get<int>()),
                                            spec.value("wait", 0));
  }
  if (kind == "external") return std::make_unique<ExternalAttacker>();
  throw InputError("unknown strategy kind '" + kind + "'");
}

}  // namespace ddab

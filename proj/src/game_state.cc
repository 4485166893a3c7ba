// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/game_state.h"

#include <algorithm>
#include <tuple>

#include "ddab/errors.h"

namespace ddab {

std::string_view ToString(Player p) { return p == Player::kDefender ? "defender" : "attacker"; }

std::string_view ToString(Phase p) {
  switch (p) {
    case Phase::kDefender:
      return "defender";
    case Phase::kAttacker:
      return "attacker";
    case Phase::kEvaluate:
      return "evaluate";
  }
  return "?";
}

AssetDistribution::AssetDistribution(std::vector<Rational> amounts) : amounts_(std::move(amounts)) {
  for (const auto& a : amounts_) {
    if (a.sign() < 0) throw InputError("negative asset amount " + a.ToString());
    total_ += a;
  }
}

AssetDistribution AssetDistribution::Zero(int num_nodes) {
  return AssetDistribution(std::vector<Rational>(static_cast<std::size_t>(num_nodes)));
}

AssetDistribution AssetDistribution::Single(int num_nodes, NodeId node, const Rational& amount) {
  std::vector<Rational> amounts(static_cast<std::size_t>(num_nodes));
  amounts.at(static_cast<std::size_t>(node)) = amount;
  return AssetDistribution(std::move(amounts));
}

std::vector<NodeId> AssetDistribution::Support() const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < amounts_.size(); ++v) {
    if (amounts_[v].sign() > 0) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

MovePlan MovePlan::Stay(const AssetDistribution& dist) {
  MovePlan plan;
  for (NodeId v : dist.Support()) plan.flows.push_back({v, v, dist.at(v), {}});
  return plan;
}

MovePlan MovePlan::Normalized() const {
  std::map<std::tuple<NodeId, NodeId, std::string>, Rational> merged;
  for (const auto& f : flows) merged[{f.from, f.to, f.group}] += f.amount;
  MovePlan out;
  for (auto& [key, amount] : merged) {
    if (amount.is_zero()) continue;
    out.flows.push_back({std::get<0>(key), std::get<1>(key), amount, std::get<2>(key)});
  }
  return out;
}

bool MovePlan::IsStay() const {
  return std::all_of(flows.begin(), flows.end(), [](const Flow& f) { return f.from == f.to; });
}

namespace {

std::string InitialLabel(std::size_t ordinal) {
  if (ordinal < 26) return std::string(1, static_cast<char>('A' + ordinal));
  return "G" + std::to_string(ordinal);
}

void SortGroups(std::vector<AttackerGroup>& groups) {
  std::sort(groups.begin(), groups.end(),
            [](const AttackerGroup& a, const AttackerGroup& b) { return a.label < b.label; });
}

std::vector<Rational> Inflow(const AssetDistribution& dist, const MovePlan& plan) {
  std::vector<Rational> next(dist.amounts().size());
  for (const auto& f : plan.flows) next[static_cast<std::size_t>(f.to)] += f.amount;
  return next;
}

std::vector<AttackerGroup> RouteGroups(const Graph& g, const GameState& state, const MovePlan& plan) {
  std::map<NodeId, std::vector<const Flow*>> by_source;
  for (const auto& f : plan.flows) by_source[f.from].push_back(&f);

  std::vector<AttackerGroup> next;
  for (const auto& group : state.groups) {
    const auto& out = by_source[group.node];
    const bool labeled = std::any_of(out.begin(), out.end(), [](const Flow* f) { return !f->group.empty(); });
    const bool all_labeled = std::all_of(out.begin(), out.end(), [](const Flow* f) { return !f->group.empty(); });
    if (labeled && !all_labeled) {
      throw IllegalMoveError("node '" + g.name(group.node) + "' mixes labeled and unlabeled attacker flows");
    }

    // Destinations in first-appearance order with the group's share of each.
    std::vector<std::pair<NodeId, Rational>> shares;
    auto add_share = [&](NodeId to, const Rational& amount) {
      auto it = std::find_if(shares.begin(), shares.end(), [&](const auto& s) { return s.first == to; });
      if (it == shares.end()) {
        shares.emplace_back(to, amount);
      } else {
        it->second += amount;
      }
    };
    if (labeled) {
      Rational moved;
      for (const Flow* f : out) {
        if (f->group != group.label) continue;
        add_share(f->to, f->amount);
        moved += f->amount;
      }
      if (moved != group.amount) {
        throw IllegalMoveError("flows for group '" + group.label + "' move " + moved.ToString() +
                               " but the group holds " + group.amount.ToString());
      }
    } else {
      const Rational fraction = group.amount / state.attacker.at(group.node);
      for (const Flow* f : out) add_share(f->to, f->amount * fraction);
    }

    if (shares.size() == 1) {
      next.push_back({group.label, shares.front().first, group.amount});
    } else {
      for (std::size_t i = 0; i < shares.size(); ++i) {
        next.push_back({group.label + "." + std::to_string(i), shares[i].first, shares[i].second});
      }
    }
  }
  // Every labeled flow must belong to a group at its source.
  for (const auto& f : plan.flows) {
    if (f.group.empty()) continue;
    const bool known = std::any_of(state.groups.begin(), state.groups.end(), [&](const AttackerGroup& grp) {
      return grp.label == f.group && grp.node == f.from;
    });
    if (!known) {
      throw IllegalMoveError("flow names group '" + f.group + "' which is not at '" + g.name(f.from) + "'");
    }
  }
  SortGroups(next);
  return next;
}

}  // namespace

GameState MakeInitialState(AssetDistribution defender, AssetDistribution attacker) {
  if (defender.size() != attacker.size()) throw InputError("distribution sizes differ");
  GameState state;
  state.t = 0;
  state.phase = Phase::kDefender;
  std::size_t ordinal = 0;
  for (NodeId v : attacker.Support()) state.groups.push_back({InitialLabel(ordinal++), v, attacker.at(v)});
  SortGroups(state.groups);
  state.defender = std::move(defender);
  state.attacker = std::move(attacker);
  return state;
}

void ValidateMove(const Graph& g, const AssetDistribution& dist, const MovePlan& plan) {
  if (dist.size() != g.num_nodes()) throw IllegalMoveError("distribution does not match graph");
  std::vector<Rational> outflow(static_cast<std::size_t>(g.num_nodes()));
  for (const auto& f : plan.flows) {
    if (!g.Contains(f.from) || !g.Contains(f.to)) throw IllegalMoveError("flow references unknown node");
    if (f.amount.sign() <= 0) {
      throw IllegalMoveError("flow " + g.name(f.from) + " -> " + g.name(f.to) + " has nonpositive amount " +
                             f.amount.ToString());
    }
    if (f.from != f.to && !g.Adjacent(f.from, f.to)) {
      throw IllegalMoveError("flow " + g.name(f.from) + " -> " + g.name(f.to) + " does not follow an edge");
    }
    outflow[static_cast<std::size_t>(f.from)] += f.amount;
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (outflow[static_cast<std::size_t>(v)] != dist.at(v)) {
      throw IllegalMoveError("conservation violated at '" + g.name(v) + "': outflow " +
                             outflow[static_cast<std::size_t>(v)].ToString() + " != holding " +
                             dist.at(v).ToString());
    }
  }
}

GameState ApplyMove(const Graph& g, const GameState& state, Player mover, const MovePlan& plan) {
  const Phase expected = mover == Player::kDefender ? Phase::kDefender : Phase::kAttacker;
  if (state.phase != expected) {
    throw ProtocolError(std::string(ToString(mover)) + " moved during the " + std::string(ToString(state.phase)) +
                        " phase");
  }
  GameState next = state;
  if (mover == Player::kDefender) {
    ValidateMove(g, state.defender, plan);
    next.defender = AssetDistribution(Inflow(state.defender, plan));
    next.phase = Phase::kAttacker;
  } else {
    ValidateMove(g, state.attacker, plan);
    next.groups = RouteGroups(g, state, plan);
    next.attacker = AssetDistribution(Inflow(state.attacker, plan));
    next.phase = Phase::kEvaluate;
  }
  return next;
}

std::optional<int> FirstBreach(const GameState& state, const PathSpec& path) {
  for (int i = 0; i < path.size(); ++i) {
    const NodeId v = path.at(i);
    if (state.attacker.at(v) > state.defender.at(v)) return i;
  }
  return std::nullopt;
}

bool IsSafe(const GameState& state, const PathSpec& path) { return !FirstBreach(state, path).has_value(); }

GameState AdvanceTimestep(const GameState& state) {
  if (state.phase != Phase::kEvaluate) throw ProtocolError("timestep advanced outside the evaluate phase");
  GameState next = state;
  next.t += 1;
  next.phase = Phase::kDefender;
  return next;
}

Observation Observe(const GameState& state, const VisibilityRegion& region) {
  Observation obs;
  obs.k = region.k;
  Rational visible;
  for (NodeId v : state.attacker.Support()) {
    if (!region.Contains(v)) continue;
    obs.visible_attacker.emplace(v, state.attacker.at(v));
    visible += state.attacker.at(v);
  }
  obs.unobserved_mass = state.attacker.total() - visible;
  for (const auto& grp : state.groups) {
    if (region.Contains(grp.node)) obs.visible_groups.push_back(grp);
  }
  return obs;
}

}  // namespace ddab

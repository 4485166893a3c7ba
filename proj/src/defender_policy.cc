// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/defender_policy.h"

#include <algorithm>

#include "ddab/errors.h"

namespace ddab {
namespace {

int Sign(int x) { return (x > 0) - (x < 0); }

bool Positive(const std::optional<int>& a) { return !a.has_value() || *a > 0; }
bool Negative(const std::optional<int>& a) { return a.has_value() && *a < 0; }

void CheckPlatoonState(const PartitionScheme& scheme, const PlatoonState& platoons) {
  if (platoons.centers.size() != scheme.partitions.size()) {
    throw InputError("platoon state does not match the partition scheme");
  }
  for (std::size_t w = 0; w < scheme.partitions.size(); ++w) {
    const auto& part = scheme.partitions[w];
    if (part.small) continue;
    const int l = platoons.centers[w];
    if (l < part.first + 1 || l > part.last - 1) {
      throw InputError("platoon center " + std::to_string(l) + " outside [" + std::to_string(part.first + 1) +
                       ", " + std::to_string(part.last - 1) + "]");
    }
  }
}

// Frontier of a platoon partition as an inclusive index range.
std::pair<int, int> FrontierRange(const Partition& part, int l) {
  const int left = l - part.first;
  const int right = part.last - l;
  if (l == part.center || left == right) return {part.first, part.last};
  if (left < right) return {part.first, l};
  return {l, part.last};
}

}  // namespace

long RequiredUnits(int path_len, int k) {
  if (path_len < 1) throw InputError("path length must be >= 1");
  if (k < 0) throw InputError("sensing distance must be >= 0");
  const long block = 2L * k + 3;
  return 3 * (path_len / block) + std::min<long>(path_len % block, 3);
}

Rational RequiredAssets(int path_len, int k, const Rational& attacker_total) {
  if (attacker_total.sign() <= 0) throw InputError("attacker total must be positive");
  return Rational(RequiredUnits(path_len, k)) * attacker_total;
}

int PartitionScheme::PartitionOf(int path_index) const {
  for (std::size_t w = 0; w < partitions.size(); ++w) {
    if (partitions[w].Contains(path_index)) return static_cast<int>(w);
  }
  throw InputError("path index " + std::to_string(path_index) + " outside the partition scheme");
}

long PartitionScheme::Units() const {
  long units = 0;
  for (const auto& p : partitions) units += p.small ? p.size() : 3;
  return units;
}

PartitionScheme BuildPartitions(int path_len, int k) {
  if (path_len < 1) throw InputError("path length must be >= 1");
  if (k < 0) throw InputError("sensing distance must be >= 0");
  PartitionScheme scheme;
  scheme.k = k;
  scheme.path_length = path_len;
  const int block = 2 * k + 3;
  for (int first = 0; first < path_len; first += block) {
    Partition part;
    part.first = first;
    part.last = std::min(first + block, path_len) - 1;
    part.center = part.first + (part.size() - 1) / 2;
    part.small = part.size() <= 2;
    scheme.partitions.push_back(part);
  }
  return scheme;
}

PlatoonState CenteredPlatoons(const PartitionScheme& scheme) {
  PlatoonState state;
  for (const auto& part : scheme.partitions) state.centers.push_back(part.center);
  return state;
}

bool AdvantageReport::Observed() const {
  return std::any_of(d_attacker.begin(), d_attacker.end(), [](const auto& d) { return d.has_value(); });
}

std::optional<int> AdvantageReport::MinAdvantage(const PartitionScheme& scheme) const {
  std::optional<int> best;
  for (const auto& part : scheme.partitions) {
    if (part.small) continue;
    for (int i = part.first; i <= part.last; ++i) {
      const auto& a = advantage[static_cast<std::size_t>(i)];
      if (a && (!best || *a < *best)) best = a;
    }
  }
  return best;
}

AdvantageReport ComputeAdvantages(const Environment& env, const PartitionScheme& scheme,
                                  const PlatoonState& platoons, std::optional<NodeId> attacker) {
  CheckPlatoonState(scheme, platoons);
  const int n = scheme.path_length;
  if (n != env.path_length()) throw InputError("partition scheme built for a different path");
  AdvantageReport report;
  report.d_attacker.resize(static_cast<std::size_t>(n));
  report.d_defender.resize(static_cast<std::size_t>(n));
  report.advantage.resize(static_cast<std::size_t>(n));
  report.frontier.assign(static_cast<std::size_t>(n), false);
  for (std::size_t w = 0; w < scheme.partitions.size(); ++w) {
    const auto& part = scheme.partitions[w];
    const int l = platoons.centers[w];
    const auto [f_lo, f_hi] = FrontierRange(part, l);
    for (int i = part.first; i <= part.last; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (attacker) report.d_attacker[idx] = env.Distance(env.path().at(i), *attacker);
      report.d_defender[idx] = part.small ? 0 : std::abs(i - l);
      if (report.d_attacker[idx]) report.advantage[idx] = *report.d_attacker[idx] - report.d_defender[idx];
      report.frontier[idx] = !part.small && i >= f_lo && i <= f_hi;
    }
  }
  return report;
}

std::optional<NodeId> LocateGroup(const Observation& obs, const std::string& label) {
  for (const auto& g : obs.visible_groups) {
    if (g.label == label) return g.node;
  }
  return std::nullopt;
}

DefenderDecision DefenderStep(const Environment& env, const PartitionScheme& scheme, const PlatoonState& platoons,
                              std::optional<NodeId> attacker, PolicyMutation mutation) {
  const AdvantageReport report = ComputeAdvantages(env, scheme, platoons, attacker);
  DefenderDecision decision;
  decision.platoons = platoons;
  const PathSpec& path = env.path();

  for (std::size_t w = 0; w < scheme.partitions.size(); ++w) {
    const auto& part = scheme.partitions[w];
    if (part.small) continue;
    const int l = platoons.centers[w];

    bool negative_left = false;
    bool negative_right = false;
    std::optional<int> target;  // most negative index, lowest index on ties
    for (int i = part.first; i <= part.last; ++i) {
      const auto& a = report.advantage[static_cast<std::size_t>(i)];
      if (!Negative(a)) continue;
      negative_left = negative_left || i < l;
      negative_right = negative_right || i > l;
      if (!target || *a < *report.advantage[static_cast<std::size_t>(*target)]) target = i;
    }
    if (negative_left && negative_right && mutation == PolicyMutation::kNone) {
      throw InternalError("negative advantages on both sides of the platoon centered at path index " +
                          std::to_string(l));
    }

    bool frontier_positive = true;
    for (int i = part.first; i <= part.last; ++i) {
      if (report.frontier[static_cast<std::size_t>(i)]) {
        frontier_positive = frontier_positive && Positive(report.advantage[static_cast<std::size_t>(i)]);
      }
    }

    int next = l;
    switch (mutation) {
      case PolicyMutation::kFrozenPlatoons:
        break;
      case PolicyMutation::kIgnoreNegatives:
        if (frontier_positive) next = l + Sign(part.center - l);
        break;
      case PolicyMutation::kNone:
        if (frontier_positive) {
          next = l + Sign(part.center - l);
        } else if (target) {
          next = std::clamp(l + Sign(*target - l), part.first + 1, part.last - 1);
        }
        break;
    }
    decision.platoons.centers[w] = next;

    const int shift = next - l;
    for (int offset = -1; offset <= 1; ++offset) {
      decision.unit_plan.flows.push_back({path.at(l + offset), path.at(l + offset + shift), Rational(1), {}});
    }
  }
  return decision;
}

Initialization Initialize(const Environment& env, const PartitionScheme& scheme, std::optional<NodeId> attacker,
                          const Rational& unit_mass, PolicyMutation mutation) {
  Initialization init;
  init.platoons = CenteredPlatoons(scheme);
  const int cap = 2 * scheme.path_length;
  while (true) {
    const auto min_adv = ComputeAdvantages(env, scheme, init.platoons, attacker).MinAdvantage(scheme);
    if (!min_adv || *min_adv >= -1) break;
    if (init.iterations >= cap) {
      throw InternalError("initialization did not reach advantages >= -1 within " + std::to_string(cap) +
                          " virtual steps");
    }
    auto next = DefenderStep(env, scheme, init.platoons, attacker, mutation).platoons;
    if (next == init.platoons) {
      // A mutated policy may stall; the real one never does.
      if (mutation == PolicyMutation::kNone) throw InternalError("initialization stalled with an advantage below -1");
      break;
    }
    init.platoons = std::move(next);
    ++init.iterations;
  }
  const auto platoon = PlatoonDistribution(env, scheme, init.platoons, unit_mass);
  const auto statics = StaticDistribution(env, scheme, unit_mass);
  std::vector<Rational> amounts = platoon.amounts();
  for (std::size_t v = 0; v < amounts.size(); ++v) amounts[v] += statics.amounts()[v];
  init.distribution = AssetDistribution(std::move(amounts));
  return init;
}

AssetDistribution PlatoonDistribution(const Environment& env, const PartitionScheme& scheme,
                                      const PlatoonState& platoons, const Rational& unit_mass) {
  CheckPlatoonState(scheme, platoons);
  std::vector<Rational> amounts(static_cast<std::size_t>(env.num_nodes()));
  for (std::size_t w = 0; w < scheme.partitions.size(); ++w) {
    if (scheme.partitions[w].small) continue;
    const int l = platoons.centers[w];
    for (int i = l - 1; i <= l + 1; ++i) amounts[static_cast<std::size_t>(env.path().at(i))] += unit_mass;
  }
  return AssetDistribution(std::move(amounts));
}

AssetDistribution StaticDistribution(const Environment& env, const PartitionScheme& scheme, const Rational& unit_mass) {
  std::vector<Rational> amounts(static_cast<std::size_t>(env.num_nodes()));
  for (const auto& part : scheme.partitions) {
    if (!part.small) continue;
    for (int i = part.first; i <= part.last; ++i) amounts[static_cast<std::size_t>(env.path().at(i))] += unit_mass;
  }
  return AssetDistribution(std::move(amounts));
}

MovePlan ScalePlan(const MovePlan& plan, const Rational& factor) {
  MovePlan out;
  if (factor.is_zero()) return out;
  for (const auto& f : plan.flows) out.flows.push_back({f.from, f.to, f.amount * factor, f.group});
  return out;
}

}  // namespace ddab

// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/graph.h"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "ddab/errors.h"

namespace ddab {

Graph::Graph(std::vector<std::string> names, const std::vector<std::pair<NodeId, NodeId>>& edges)
    : names_(std::move(names)), adjacency_(names_.size()) {
  std::set<std::string> seen_names;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty node name");
    if (!seen_names.insert(n).second) throw InputError("duplicate node '" + n + "'");
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& [a, b] : edges) {
    if (!Contains(a) || !Contains(b)) throw InputError("edge endpoint out of range");
    if (a == b) throw InputError("self-loop on node '" + names_[a] + "'");
    const auto key = std::minmax(a, b);
    if (!seen.insert(key).second) {
      throw InputError("duplicate edge " + names_[key.first] + " - " + names_[key.second]);
    }
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  edges_.assign(seen.begin(), seen.end());
}

Graph Graph::FromNamedEdges(std::vector<std::string> names,
                            const std::vector<std::pair<std::string, std::string>>& edges) {
  std::unordered_map<std::string, NodeId> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], static_cast<NodeId>(i));
  std::vector<std::pair<NodeId, NodeId>> ids;
  ids.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia == index.end()) throw InputError("edge references unknown node '" + a + "'");
    if (ib == index.end()) throw InputError("edge references unknown node '" + b + "'");
    ids.emplace_back(ia->second, ib->second);
  }
  return Graph(std::move(names), ids);
}

const std::string& Graph::name(NodeId v) const {
  if (!Contains(v)) throw InputError("unknown node index " + std::to_string(v));
  return names_[static_cast<std::size_t>(v)];
}

const std::vector<NodeId>& Graph::neighbors(NodeId v) const {
  if (!Contains(v)) throw InputError("unknown node index " + std::to_string(v));
  return adjacency_[static_cast<std::size_t>(v)];
}

bool Graph::Adjacent(NodeId a, NodeId b) const {
  const auto& list = neighbors(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::optional<NodeId> Graph::Find(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

NodeId Graph::Index(const std::string& name) const {
  const auto id = Find(name);
  if (!id) throw InputError("unknown node '" + name + "'");
  return *id;
}

std::vector<int> Graph::BfsDistances(NodeId source) const {
  return BfsDistances(std::vector<NodeId>{source});
}

std::vector<int> Graph::BfsDistances(const std::vector<NodeId>& sources) const {
  std::vector<int> dist(names_.size(), -1);
  std::deque<NodeId> queue;
  for (NodeId s : sources) {
    if (!Contains(s)) throw InputError("unknown node index " + std::to_string(s));
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId w : adjacency_[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool Graph::IsConnected() const {
  if (names_.empty()) return true;
  const auto dist = BfsDistances(0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

int Distance(const Graph& g, NodeId a, NodeId b) {
  if (!g.Contains(a) || !g.Contains(b)) throw InputError("distance query on unknown node");
  const int d = g.BfsDistances(a)[b];
  if (d < 0) throw EnvironmentError("node '" + g.name(b) + "' unreachable from '" + g.name(a) + "'");
  return d;
}

int PathDistance(const Graph& g, const PathSpec& path, NodeId v) {
  if (!g.Contains(v)) throw InputError("path distance query on unknown node");
  const int d = g.BfsDistances(path.nodes)[v];
  if (d < 0) throw EnvironmentError("node '" + g.name(v) + "' unreachable from the path");
  return d;
}

VisibilityRegion ComputeVisibilityRegion(const Graph& g, const PathSpec& path, int k) {
  if (k < 0) throw InputError("sensing distance must be nonnegative");
  const auto dstar = g.BfsDistances(path.nodes);
  VisibilityRegion region;
  region.k = k;
  region.member.assign(dstar.size(), false);
  for (std::size_t v = 0; v < dstar.size(); ++v) {
    if (dstar[v] >= 0 && dstar[v] <= k) {
      region.member[v] = true;
      region.members.push_back(static_cast<NodeId>(v));
    }
  }
  return region;
}

namespace {

void CheckPathShape(const Graph& g, const PathSpec& path) {
  if (path.nodes.empty()) throw InputError("path is empty");
  std::set<NodeId> distinct;
  for (NodeId v : path.nodes) {
    if (!g.Contains(v)) throw InputError("path references unknown node index " + std::to_string(v));
    if (!distinct.insert(v).second) throw InputError("path visits '" + g.name(v) + "' twice");
  }
  for (int i = 0; i + 1 < path.size(); ++i) {
    if (!g.Adjacent(path.at(i), path.at(i + 1))) {
      throw InputError("path nodes '" + g.name(path.at(i)) + "' and '" + g.name(path.at(i + 1)) +
                       "' are not adjacent");
    }
  }
}

std::vector<std::string> ShortestRoute(const Graph& g, NodeId from, NodeId to) {
  std::vector<NodeId> parent(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(g.num_nodes()), false);
  std::deque<NodeId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (NodeId w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  std::vector<std::string> route;
  for (NodeId v = to; v != -1; v = parent[v]) route.push_back(g.name(v));
  std::reverse(route.begin(), route.end());
  return route;
}

}  // namespace

ValidationReport ValidateEnvironment(const Graph& g, const PathSpec& path) {
  CheckPathShape(g, path);
  ValidationReport report;
  const auto from_start = g.BfsDistances(path.start());
  report.shortest_distance = from_start[path.target()];
  if (report.shortest_distance < 0) {
    throw EnvironmentError("target '" + g.name(path.target()) + "' unreachable from start");
  }
  report.shortest_path_ok = report.shortest_distance == path.size() - 1;
  if (!report.shortest_path_ok) {
    auto witness = ShortestRoute(g, path.start(), path.target());
    std::string text;
    for (const auto& n : witness) text += (text.empty() ? "" : " -> ") + n;
    throw EnvironmentError("path is not a shortest S-T path: d(S,T) = " +
                               std::to_string(report.shortest_distance) + " < |P| - 1 = " +
                               std::to_string(path.size() - 1) + " via " + text,
                           std::move(witness));
  }

  std::vector<int> index(static_cast<std::size_t>(g.num_nodes()), -1);
  for (int i = 0; i < path.size(); ++i) index[path.at(i)] = i;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (index[v] >= 0) continue;
    PathContact contact{v, {}, true};
    for (NodeId w : g.neighbors(v)) {
      if (index[w] >= 0) contact.path_indices.push_back(index[w]);
    }
    if (contact.path_indices.empty()) continue;
    std::sort(contact.path_indices.begin(), contact.path_indices.end());
    contact.consecutive = contact.path_indices.size() <= 3 &&
                          contact.path_indices.back() - contact.path_indices.front() <= 2;
    report.contacts_ok = report.contacts_ok && contact.consecutive;
    report.contacts.push_back(std::move(contact));
  }
  return report;
}

Environment Environment::Create(Graph graph, PathSpec path, EnvironmentMode mode) {
  if (graph.num_nodes() == 0) throw InputError("graph has no nodes");
  if (!graph.IsConnected()) throw EnvironmentError("graph is not connected");
  Environment env(std::move(graph), std::move(path));
  env.report_ = ValidateEnvironment(env.graph_, env.path_);
  if (env.path_.size() < 3) {
    if (mode != EnvironmentMode::kAnalysisOnly) {
      throw InputError("path must have at least 3 nodes (got " + std::to_string(env.path_.size()) + ")");
    }
    env.analysis_only_ = true;
  }
  const auto n = static_cast<std::size_t>(env.num_nodes());
  env.distances_.resize(n * n);
  for (NodeId v = 0; v < env.num_nodes(); ++v) {
    const auto row = env.graph_.BfsDistances(v);
    std::copy(row.begin(), row.end(), env.distances_.begin() + static_cast<std::ptrdiff_t>(v * n));
  }
  env.path_distance_ = env.graph_.BfsDistances(env.path_.nodes);
  env.path_index_.assign(n, -1);
  for (int i = 0; i < env.path_.size(); ++i) env.path_index_[env.path_.at(i)] = i;
  return env;
}

std::optional<int> Environment::PathIndex(NodeId v) const {
  const int i = path_index_.at(static_cast<std::size_t>(v));
  if (i < 0) return std::nullopt;
  return i;
}

VisibilityRegion Environment::Visibility(int k) const {
  if (k < 0) throw InputError("sensing distance must be nonnegative");
  VisibilityRegion region;
  region.k = k;
  region.member.assign(path_distance_.size(), false);
  for (std::size_t v = 0; v < path_distance_.size(); ++v) {
    if (path_distance_[v] <= k) {
      region.member[v] = true;
      region.members.push_back(static_cast<NodeId>(v));
    }
  }
  return region;
}

int Environment::MaxPathDistance() const {
  return *std::max_element(path_distance_.begin(), path_distance_.end());
}

}  // namespace ddab

// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_GRAPH_H_
#define DDAB_GRAPH_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ddab {

// Dense node index. Interchange files name nodes with opaque strings; the
// loader maps them onto 0..n-1 in declaration order.
using NodeId = int;

// Finite, simple, undirected graph. Immutable after construction.
class Graph {
 public:
  // Throws InputError on self loops, duplicate edges, duplicate names, or
  // endpoints outside [0, names.size()).
  Graph(std::vector<std::string> names, const std::vector<std::pair<NodeId, NodeId>>& edges);

  static Graph FromNamedEdges(
      std::vector<std::string> names,
      const std::vector<std::pair<std::string, std::string>>& edges);

  int num_nodes() const { return static_cast<int>(names_.size()); }
  const std::string& name(NodeId v) const;
  const std::vector<std::string>& names() const { return names_; }
  // Sorted ascending.
  const std::vector<NodeId>& neighbors(NodeId v) const;
  // Each edge once, as (min, max), sorted.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

  bool Contains(NodeId v) const { return v >= 0 && v < num_nodes(); }
  bool Adjacent(NodeId a, NodeId b) const;
  std::optional<NodeId> Find(const std::string& name) const;
  // Throws InputError for unknown names.
  NodeId Index(const std::string& name) const;

  // Hop distances from `source`; -1 marks unreachable nodes.
  std::vector<int> BfsDistances(NodeId source) const;
  // Multi-source variant: distance to the nearest source.
  std::vector<int> BfsDistances(const std::vector<NodeId>& sources) const;
  bool IsConnected() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
};

// The defended path p_1..p_|P| (stored 0-based), S = front, T = back.
struct PathSpec {
  std::vector<NodeId> nodes;

  int size() const { return static_cast<int>(nodes.size()); }
  NodeId start() const { return nodes.front(); }
  NodeId target() const { return nodes.back(); }
  NodeId at(int index) const { return nodes.at(static_cast<std::size_t>(index)); }
};

struct VisibilityRegion {
  int k = 0;
  std::vector<bool> member;      // indexed by NodeId
  std::vector<NodeId> members;   // ascending

  bool Contains(NodeId v) const { return member.at(static_cast<std::size_t>(v)); }
};

// One off-path node that touches the path, with the path indices it touches.
struct PathContact {
  NodeId node = 0;
  std::vector<int> path_indices;  // ascending, 0-based
  bool consecutive = true;        // indices form a run with max gap <= 2 and size <= 3
};

struct ValidationReport {
  int shortest_distance = 0;  // d(S,T)
  bool shortest_path_ok = false;
  // Derived consequence of the shortest-path property; reported, not enforced.
  std::vector<PathContact> contacts;
  bool contacts_ok = true;
};

// Exact BFS hop count. Throws InputError for unknown nodes and
// EnvironmentError if b is unreachable from a.
int Distance(const Graph& g, NodeId a, NodeId b);

// min_i d(v, p_i).
int PathDistance(const Graph& g, const PathSpec& path, NodeId v);

// U_k = { v : d*(v) <= k }. Throws InputError for negative k.
VisibilityRegion ComputeVisibilityRegion(const Graph& g, const PathSpec& path, int k);

// Checks path well-formedness (membership, distinct nodes, consecutive
// adjacency) and d(S,T) = |P| - 1. Throws InputError for a malformed path and
// EnvironmentError naming a shortcut witness when the path is not shortest.
ValidationReport ValidateEnvironment(const Graph& g, const PathSpec& path);

enum class EnvironmentMode {
  kGame,          // |P| >= 3 enforced
  kAnalysisOnly,  // |P| in {1, 2} also accepted
};

// Graph + validated path with all-pairs distances and d* precomputed.
// Immutable; safe to share between threads.
class Environment {
 public:
  // Validates connectivity, path well-formedness and the shortest-path
  // property. Throws InputError / EnvironmentError.
  static Environment Create(Graph graph, PathSpec path, EnvironmentMode mode = EnvironmentMode::kGame);

  const Graph& graph() const { return graph_; }
  const PathSpec& path() const { return path_; }
  int num_nodes() const { return graph_.num_nodes(); }
  int path_length() const { return path_.size(); }
  bool analysis_only() const { return analysis_only_; }
  const ValidationReport& report() const { return report_; }

  int Distance(NodeId a, NodeId b) const {
    return distances_[static_cast<std::size_t>(a) * static_cast<std::size_t>(num_nodes()) +
                      static_cast<std::size_t>(b)];
  }
  int PathDistance(NodeId v) const { return path_distance_.at(static_cast<std::size_t>(v)); }
  // 0-based position on the path, or nullopt for off-path nodes.
  std::optional<int> PathIndex(NodeId v) const;
  bool OnPath(NodeId v) const { return PathIndex(v).has_value(); }
  VisibilityRegion Visibility(int k) const;
  int MaxPathDistance() const;

 private:
  Environment(Graph graph, PathSpec path) : graph_(std::move(graph)), path_(std::move(path)) {}

  Graph graph_;
  PathSpec path_;
  bool analysis_only_ = false;
  ValidationReport report_;
  std::vector<int> distances_;
  std::vector<int> path_distance_;
  std::vector<int> path_index_;  // -1 off path
};

}  // namespace ddab

#endif  // DDAB_GRAPH_H_

// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_MATCHING_H_
#define DDAB_MATCHING_H_

#include <vector>

namespace ddab {

// Maximum bipartite matching (Kuhn's augmenting paths). `adjacency[u]`
// lists the right vertices left vertex u may take. Returns the matching
// size; `match_right` (optional) receives the left partner of each right
// vertex or -1.
inline int MaxBipartiteMatching(const std::vector<std::vector<int>>& adjacency, int num_right,
                                std::vector<int>* match_right = nullptr) {
  std::vector<int> owner(static_cast<std::size_t>(num_right), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int u) -> bool {
    for (int r : adjacency[static_cast<std::size_t>(u)]) {
      if (visited[static_cast<std::size_t>(r)]) continue;
      visited[static_cast<std::size_t>(r)] = 1;
      if (owner[static_cast<std::size_t>(r)] < 0 || self(self, owner[static_cast<std::size_t>(r)])) {
        owner[static_cast<std::size_t>(r)] = u;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (int u = 0; u < static_cast<int>(adjacency.size()); ++u) {
    visited.assign(static_cast<std::size_t>(num_right), 0);
    if (augment(augment, u)) ++size;
  }
  if (match_right) *match_right = owner;
  return size;
}

}  // namespace ddab

#endif  // DDAB_MATCHING_H_

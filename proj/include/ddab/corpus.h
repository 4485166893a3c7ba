// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_CORPUS_H_
#define DDAB_CORPUS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddab/graph.h"
#include "ddab/verifier.h"
#include "json.hpp"

namespace ddab {

struct CorpusEntry {
  std::string name;
  std::shared_ptr<const Environment> env;
  int k = 0;
  // Set for gadget-based entries (necessity applies).
  std::optional<GadgetSpec> gadget;
};

struct CorpusSpec {
  int count = 60;
  int min_path = 3;
  int max_path = 9;
  int max_k = 2;
  int max_nodes = 14;
  std::uint64_t seed = 2022;
};

// Two thirds gadgets (some with the outer ring), the rest bare paths; every
// entry gets random off-path decorations that keep the environment valid.
// Deterministic in the spec.
std::vector<CorpusEntry> BuildCorpus(const CorpusSpec& spec);

// {"count", "min_path", "max_path", "max_k", "max_nodes", "seed"}, all
// optional, or {"environments": [{"name", "environment", "k", "gadget"}]}
// for explicit entries. Throws InputError.
std::vector<CorpusEntry> CorpusFromJson(const nlohmann::json& doc, const std::string& base_dir = ".");
nlohmann::json CorpusToJson(const std::vector<CorpusEntry>& corpus);

}  // namespace ddab

#endif  // DDAB_CORPUS_H_

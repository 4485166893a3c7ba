// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/corpus.h"

#include <filesystem>
#include <random>

#include "ddab/adversary.h"
#include "ddab/environment_io.h"
#include "ddab/errors.h"

namespace ddab {

using nlohmann::json;

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  // Uniform in [lo, hi].
  int Between(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool Coin() { return rng_() & 1; }

 private:
  std::mt19937_64 rng_;
};

std::optional<Environment> WithNode(const Environment& env, const std::string& name, const std::vector<NodeId>& nbrs) {
  const Graph& g = env.graph();
  std::vector<std::string> names = g.names();
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [a, b] : g.edges()) edges.emplace_back(g.name(a), g.name(b));
  names.push_back(name);
  for (NodeId v : nbrs) edges.emplace_back(g.name(v), name);
  try {
    return Environment::Create(Graph::FromNamedEdges(std::move(names), edges), env.path());
  } catch (const Error&) {
    return std::nullopt;
  }
}

void Decorate(Environment& env, int k, const std::optional<GadgetSpec>& gadget, int max_nodes, Draw& draw) {
  const int room = std::min(max_nodes - env.num_nodes(), 3);
  if (room <= 0) return;
  const int wanted = draw.Between(0, room);
  int added = 0;
  for (int attempt = 0; attempt < 20 && added < wanted; ++attempt) {
    std::vector<NodeId> nbrs{draw.Between(0, env.num_nodes() - 1)};
    if (draw.Coin()) {
      const NodeId other = draw.Between(0, env.num_nodes() - 1);
      if (other != nbrs.front()) nbrs.push_back(other);
    }
    auto next = WithNode(env, "d" + std::to_string(added + 1), nbrs);
    if (!next) continue;
    if (gadget) {
      try {
        GadgetAttackPlan(*next, k, gadget->alpha);
      } catch (const InputError&) {
        continue;
      }
    }
    env = std::move(*next);
    ++added;
  }
}

}  // namespace

std::vector<CorpusEntry> BuildCorpus(const CorpusSpec& spec) {
  if (spec.count < 0 || spec.min_path < 3 || spec.max_path < spec.min_path || spec.max_k < 0) {
    throw InputError("invalid corpus spec");
  }
  Draw draw(spec.seed);
  std::vector<CorpusEntry> corpus;
  for (int i = 0; i < spec.count; ++i) {
    const int n = draw.Between(spec.min_path, spec.max_path);
    const int k = draw.Between(0, spec.max_k);
    CorpusEntry entry;
    entry.k = k;
    std::optional<Environment> env;
    if (i % 3 != 2) {
      GadgetSpec g;
      g.path_len = n;
      g.k = k;
      g.alpha = draw.Between(1, n - 2);
      g.entry_chain_length = k + 2;
      g.outer_ring = draw.Coin();
      auto size = [&] { return n + 1 + g.ChainLength() + (g.outer_ring ? 1 + k : 0); };
      while (size() > spec.max_nodes && g.entry_chain_length > k) --g.entry_chain_length;
      if (size() > spec.max_nodes) g.outer_ring = false;
      if (size() > spec.max_nodes) throw InputError("max_nodes too small for a gadget");
      env.emplace(BuildGadget(g));
      entry.gadget = g;
      entry.name = "gadget" + std::to_string(i) + "_n" + std::to_string(n) + "_k" + std::to_string(k) + "_a" +
                   std::to_string(g.alpha) + (g.outer_ring ? "_ring" : "");
    } else {
      std::vector<std::string> names;
      std::vector<std::pair<std::string, std::string>> edges;
      std::vector<NodeId> path;
      for (int j = 0; j < n; ++j) {
        names.push_back("p" + std::to_string(j + 1));
        path.push_back(j);
        if (j > 0) edges.emplace_back(names[static_cast<std::size_t>(j - 1)], names.back());
      }
      env.emplace(Environment::Create(Graph::FromNamedEdges(names, edges), PathSpec{path}));
      entry.name = "path" + std::to_string(i) + "_n" + std::to_string(n) + "_k" + std::to_string(k);
    }
    Decorate(*env, k, entry.gadget, spec.max_nodes, draw);
    entry.env = std::make_shared<const Environment>(std::move(*env));
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

std::vector<CorpusEntry> CorpusFromJson(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw InputError("corpus spec must be a JSON object");
  if (!doc.contains("environments")) {
    CorpusSpec spec;
    spec.count = doc.value("count", spec.count);
    spec.min_path = doc.value("min_path", spec.min_path);
    spec.max_path = doc.value("max_path", spec.max_path);
    spec.max_k = doc.value("max_k", spec.max_k);
    spec.max_nodes = doc.value("max_nodes", spec.max_nodes);
    spec.seed = doc.value("seed", spec.seed);
    return BuildCorpus(spec);
  }
  std::vector<CorpusEntry> corpus;
  for (const auto& item : doc.at("environments")) {
    CorpusEntry entry;
    entry.name = item.value("name", "env" + std::to_string(corpus.size()));
    if (!item.contains("k") && !item.contains("gadget")) throw InputError("corpus entry '" + entry.name + "' needs k");
    if (item.contains("gadget")) {
      const json& g = item.at("gadget");
      GadgetSpec spec;
      spec.path_len = g.value("path_len", spec.path_len);
      spec.k = g.value("k", spec.k);
      spec.alpha = g.value("alpha", spec.alpha);
      spec.entry_chain_length = g.value("entry_chain_length", -1);
      spec.outer_ring = g.value("outer_ring", false);
      entry.gadget = spec;
      entry.k = spec.k;
    }
    entry.k = item.value("k", entry.k);
    if (item.contains("environment")) {
      const json& e = item.at("environment");
      if (e.is_string()) {
        std::filesystem::path file(e.get<std::string>());
        if (file.is_relative()) file = std::filesystem::path(base_dir) / file;
        entry.env = std::make_shared<const Environment>(LoadEnvironmentFile(file.string()));
      } else {
        entry.env = std::make_shared<const Environment>(EnvironmentFromJson(e));
      }
    } else if (entry.gadget) {
      entry.env = std::make_shared<const Environment>(BuildGadget(*entry.gadget));
    } else {
      throw InputError("corpus entry '" + entry.name + "' has no environment");
    }
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

json CorpusToJson(const std::vector<CorpusEntry>& corpus) {
  json out = json::array();
  for (const auto& e : corpus) {
    json item = {{"name", e.name}, {"k", e.k}, {"environment", EnvironmentToJson(*e.env)}};
    if (e.gadget) item["gadget"] = e.gadget->ToJson();
    out.push_back(std::move(item));
  }
  return {{"environments", out}};
}

}  // namespace ddab

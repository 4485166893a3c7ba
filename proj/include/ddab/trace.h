// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_TRACE_H_
#define DDAB_TRACE_H_

#include <string>
#include <string_view>
#include <vector>

#include "ddab/game_state.h"
#include "ddab/graph.h"
#include "json.hpp"

namespace ddab {

// JSON-lines game trace. Record kinds, in order:
//   {"record": "header", "format": ..., "config": ..., "environment": ..., "nodes": [...]}
//   {"record": "phase", "t", "phase", "mover", "flows", "defender_amounts",
//    "attacker_amounts", "groups", "safe", ...}   one per phase transition
//   {"record": "outcome", "result", "win_step", "witness", "steps"}
// Amounts are "num/den" strings keyed by node name.
inline constexpr std::string_view kTraceFormat = "ddab-trace/1";

nlohmann::json AmountsToJson(const Graph& g, const AssetDistribution& dist);
AssetDistribution AmountsFromJson(const Graph& g, const nlohmann::json& doc);

nlohmann::json FlowsToJson(const Graph& g, const MovePlan& plan);
MovePlan FlowsFromJson(const Graph& g, const nlohmann::json& doc);

nlohmann::json GroupsToJson(const Graph& g, const std::vector<AttackerGroup>& groups);

// One compact JSON document per line, keys sorted; byte-stable.
std::string SerializeTrace(const std::vector<nlohmann::json>& records);
void WriteTrace(const std::string& file, const std::vector<nlohmann::json>& records);

// Throws CorruptionError (with the 0-based line) on unparsable lines.
std::vector<nlohmann::json> ParseTrace(std::string_view text);
std::vector<nlohmann::json> ReadTrace(const std::string& file);

void WriteTextFile(const std::string& file, std::string_view text);

}  // namespace ddab

#endif  // DDAB_TRACE_H_

// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_ENVIRONMENT_IO_H_
#define DDAB_ENVIRONMENT_IO_H_

#include <string>
#include <string_view>

#include "ddab/graph.h"
#include "json.hpp"

namespace ddab {

// Environment interchange format:
//   { "nodes": ["a", "b", ...],
//     "edges": [["a", "b"], ...],
//     "path":  ["S", ..., "T"] }
//
// Errors carry the 1-based source line of the offending element when parsed
// from text.
Environment ParseEnvironment(std::string_view text, EnvironmentMode mode = EnvironmentMode::kGame);
Environment LoadEnvironmentFile(const std::string& file, EnvironmentMode mode = EnvironmentMode::kGame);
// Same checks from an already parsed document (no line numbers available).
Environment EnvironmentFromJson(const nlohmann::json& doc, EnvironmentMode mode = EnvironmentMode::kGame);

nlohmann::json EnvironmentToJson(const Environment& env);
// Two-space indented, trailing newline; deterministic.
std::string SerializeEnvironment(const Environment& env);

std::string ReadTextFile(const std::string& file);

}  // namespace ddab

#endif  // DDAB_ENVIRONMENT_IO_H_

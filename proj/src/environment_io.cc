// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/environment_io.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "ddab/errors.h"

namespace ddab {
namespace {

using nlohmann::json;

// Source lines of the elements of each top-level array member, found by a
// minimal scan of the raw text (strings and nesting only; the document has
// already been validated by the JSON parser).
std::map<std::string, std::vector<int>> ElementLines(std::string_view text) {
  std::map<std::string, std::vector<int>> lines;
  int line = 1;
  int depth = 0;
  bool in_string = false;
  bool escape = false;
  std::string current_string;
  std::string last_key;
  std::string active_array;  // top-level key whose array we are inside
  bool expecting_element = false;
  for (char c : text) {
    if (in_string) {
      if (escape) {
        escape = false;
        current_string += c;
      } else if (c == '\\') {
        escape = true;
      } else if (c == '"') {
        in_string = false;
        if (depth == 1) last_key = current_string;
      } else {
        current_string += c;
      }
      if (c == '\n') ++line;
      continue;
    }
    if (c == '\n') {
      ++line;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') continue;
    if (depth == 2 && !active_array.empty() && expecting_element && c != ']') {
      lines[active_array].push_back(line);
      expecting_element = false;
    }
    switch (c) {
      case '"':
        in_string = true;
        current_string.clear();
        break;
      case '[':
      case '{':
        ++depth;
        if (depth == 2 && c == '[') {
          active_array = last_key;
          expecting_element = true;
        }
        break;
      case ']':
      case '}':
        if (depth == 2) active_array.clear();
        --depth;
        break;
      case ',':
        if (depth == 2 && !active_array.empty()) expecting_element = true;
        break;
      default:
        break;
    }
  }
  return lines;
}

std::string Where(const std::map<std::string, std::vector<int>>& lines, const std::string& key,
                  std::size_t index) {
  const auto it = lines.find(key);
  if (it == lines.end() || index >= it->second.size()) {
    return key + "[" + std::to_string(index) + "]";
  }
  return "line " + std::to_string(it->second[index]) + " (" + key + "[" + std::to_string(index) + "])";
}

Environment Build(const json& doc, EnvironmentMode mode,
                  const std::map<std::string, std::vector<int>>& lines) {
  if (!doc.is_object()) throw InputError("environment document must be a JSON object");
  for (const char* key : {"nodes", "edges", "path"}) {
    if (!doc.contains(key) || !doc.at(key).is_array()) {
      throw InputError(std::string("environment requires array field '") + key + "'");
    }
  }
  std::vector<std::string> names;
  std::set<std::string> known;
  const auto& nodes = doc.at("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].is_string()) throw InputError(Where(lines, "nodes", i) + ": node name must be a string");
    const auto& name = nodes[i].get_ref<const std::string&>();
    if (!known.insert(name).second) {
      throw InputError(Where(lines, "nodes", i) + ": duplicate node '" + name + "'");
    }
    names.push_back(name);
  }

  std::vector<std::pair<std::string, std::string>> edges;
  std::set<std::pair<std::string, std::string>> seen_edges;
  const auto& edge_list = doc.at("edges");
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const auto& e = edge_list[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw InputError(Where(lines, "edges", i) + ": edge must be a 2-element array of node names");
    }
    const auto a = e[0].get<std::string>();
    const auto b = e[1].get<std::string>();
    for (const auto& endpoint : {a, b}) {
      if (!known.count(endpoint)) {
        throw InputError(Where(lines, "edges", i) + ": edge ['" + a + "', '" + b + "'] references unknown node '" + endpoint +
                         "'");
      }
    }
    if (a == b) throw InputError(Where(lines, "edges", i) + ": self-loop on '" + a + "'");
    const auto key = std::minmax(a, b);
    if (!seen_edges.insert(key).second) {
      throw InputError(Where(lines, "edges", i) + ": duplicate edge '" + a + "' - '" + b + "'");
    }
    edges.emplace_back(a, b);
  }

  Graph graph = Graph::FromNamedEdges(std::move(names), edges);
  PathSpec path;
  const auto& path_list = doc.at("path");
  for (std::size_t i = 0; i < path_list.size(); ++i) {
    if (!path_list[i].is_string()) throw InputError(Where(lines, "path", i) + ": path entry must be a string");
    const auto name = path_list[i].get<std::string>();
    const auto id = graph.Find(name);
    if (!id) throw InputError(Where(lines, "path", i) + ": path references unknown node '" + name + "'");
    path.nodes.push_back(*id);
  }
  return Environment::Create(std::move(graph), std::move(path), mode);
}

}  // namespace

Environment ParseEnvironment(std::string_view text, EnvironmentMode mode) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("environment is not valid JSON: ") + e.what());
  }
  return Build(doc, mode, ElementLines(text));
}

Environment LoadEnvironmentFile(const std::string& file, EnvironmentMode mode) {
  try {
    return ParseEnvironment(ReadTextFile(file), mode);
  } catch (const EnvironmentError& e) {
    throw EnvironmentError(file + ": " + e.what(), e.witness());
  } catch (const InputError& e) {
    throw InputError(file + ": " + e.what());
  }
}

Environment EnvironmentFromJson(const json& doc, EnvironmentMode mode) { return Build(doc, mode, {}); }

json EnvironmentToJson(const Environment& env) {
  const Graph& g = env.graph();
  json doc;
  doc["nodes"] = g.names();
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({g.name(a), g.name(b)});
  doc["edges"] = std::move(edges);
  json path = json::array();
  for (NodeId v : env.path().nodes) path.push_back(g.name(v));
  doc["path"] = std::move(path);
  return doc;
}

std::string SerializeEnvironment(const Environment& env) { return EnvironmentToJson(env).dump(2) + "\n"; }

std::string ReadTextFile(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open '" + file + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace ddab

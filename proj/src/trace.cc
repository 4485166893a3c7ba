// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/trace.h"

#include <fstream>

#include "ddab/environment_io.h"
#include "ddab/errors.h"

namespace ddab {

using nlohmann::json;

json AmountsToJson(const Graph& g, const AssetDistribution& dist) {
  json doc = json::object();
  for (NodeId v = 0; v < g.num_nodes(); ++v) doc[g.name(v)] = dist.at(v).ToString();
  return doc;
}

AssetDistribution AmountsFromJson(const Graph& g, const json& doc) {
  if (!doc.is_object()) throw InputError("amounts must be an object keyed by node name");
  std::vector<Rational> amounts(static_cast<std::size_t>(g.num_nodes()));
  for (const auto& [name, value] : doc.items()) {
    if (!value.is_string()) throw InputError("amount for '" + name + "' must be a \"num/den\" string");
    amounts[static_cast<std::size_t>(g.Index(name))] = Rational::Parse(value.get<std::string>());
  }
  return AssetDistribution(std::move(amounts));
}

json FlowsToJson(const Graph& g, const MovePlan& plan) {
  json out = json::array();
  for (const auto& f : plan.flows) {
    json flow = {{"from", g.name(f.from)}, {"to", g.name(f.to)}, {"amount", f.amount.ToString()}};
    if (!f.group.empty()) flow["group"] = f.group;
    out.push_back(std::move(flow));
  }
  return out;
}

MovePlan FlowsFromJson(const Graph& g, const json& doc) {
  if (!doc.is_array()) throw InputError("flows must be an array");
  MovePlan plan;
  for (const auto& f : doc) {
    if (!f.is_object() || !f.contains("from") || !f.contains("to") || !f.contains("amount")) {
      throw InputError("flow needs 'from', 'to' and 'amount'");
    }
    Flow flow;
    flow.from = g.Index(f.at("from").get<std::string>());
    flow.to = g.Index(f.at("to").get<std::string>());
    flow.amount = Rational::Parse(f.at("amount").get<std::string>());
    flow.group = f.value("group", std::string());
    plan.flows.push_back(std::move(flow));
  }
  return plan;
}

json GroupsToJson(const Graph& g, const std::vector<AttackerGroup>& groups) {
  json out = json::array();
  for (const auto& grp : groups) {
    out.push_back({{"label", grp.label}, {"node", g.name(grp.node)}, {"amount", grp.amount.ToString()}});
  }
  return out;
}

std::string SerializeTrace(const std::vector<json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

void WriteTextFile(const std::string& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + file + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("write to '" + file + "' failed");
}

void WriteTrace(const std::string& file, const std::vector<json>& records) {
  WriteTextFile(file, SerializeTrace(records));
}

std::vector<json> ParseTrace(std::string_view text) {
  std::vector<json> records;
  int line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view row = text.substr(pos, end - pos);
    if (!row.empty()) {
      try {
        records.push_back(json::parse(row));
      } catch (const json::parse_error& e) {
        throw CorruptionError("trace line " + std::to_string(line + 1) + " is not JSON: " + e.what(), line);
      }
    }
    ++line;
    pos = end + 1;
  }
  return records;
}

std::vector<json> ReadTrace(const std::string& file) { return ParseTrace(ReadTextFile(file)); }

}  // namespace ddab

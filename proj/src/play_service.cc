// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/play_service.h"

#include <algorithm>
#include <filesystem>

#include "ddab/environment_io.h"
#include "ddab/errors.h"
#include "ddab/trace.h"

namespace ddab {

using nlohmann::json;

std::vector<MovePlan> LegalAttackerMoves(const GameState& state, const Environment& env, bool fractional) {
  auto others = [&](const AttackerGroup& moving) {
    MovePlan plan;
    for (const auto& g : state.groups) {
      if (g.label != moving.label) plan.flows.push_back({g.node, g.node, g.amount, g.label});
    }
    return plan;
  };
  std::vector<MovePlan> moves;
  MovePlan all_stay;
  for (const auto& g : state.groups) all_stay.flows.push_back({g.node, g.node, g.amount, g.label});
  moves.push_back(all_stay.Normalized());
  for (const auto& g : state.groups) {
    std::vector<NodeId> closed{g.node};
    for (NodeId w : env.graph().neighbors(g.node)) closed.push_back(w);
    for (std::size_t i = 1; i < closed.size(); ++i) {
      MovePlan plan = others(g);
      plan.flows.push_back({g.node, closed[i], g.amount, g.label});
      moves.push_back(plan.Normalized());
    }
    if (!fractional) continue;
    for (std::size_t i = 0; i < closed.size(); ++i) {
      for (std::size_t j = i + 1; j < closed.size(); ++j) {
        for (const Rational& q : SplitMenu()) {
          MovePlan plan = others(g);
          plan.flows.push_back({g.node, closed[i], g.amount * q, g.label});
          plan.flows.push_back({g.node, closed[j], g.amount * (Rational(1) - q), g.label});
          moves.push_back(plan.Normalized());
        }
      }
    }
  }
  return moves;
}

struct PlayService::Session {
  std::string id;
  std::mutex mu;
  std::unique_ptr<GameRunner> runner;
  bool fractional = false;
  bool no_guarantee = false;
  Rational required;
  std::vector<json> log;
  json last_attacker = json::array();
  json last_defender = json::array();
  std::chrono::steady_clock::time_point touched;
};

namespace {

json ErrorReply(std::string_view code, const std::string& message) {
  return {{"type", "error"}, {"code", code}, {"message", message}};
}

json LegalMovesJson(const Graph& g, const std::vector<MovePlan>& moves) {
  json out = json::array();
  for (std::size_t i = 0; i < moves.size(); ++i) out.push_back({{"id", i}, {"flows", FlowsToJson(g, moves[i])}});
  return out;
}

// Unlabeled flows out of a node holding a single group take its label.
MovePlan LabelFlows(MovePlan plan, const GameState& state) {
  for (auto& f : plan.flows) {
    if (!f.group.empty()) continue;
    const AttackerGroup* only = nullptr;
    int count = 0;
    for (const auto& g : state.groups) {
      if (g.node == f.from) {
        only = &g;
        ++count;
      }
    }
    if (count == 1) f.group = only->label;
  }
  // Groups the client did not mention stay put.
  for (const auto& g : state.groups) {
    const bool named = std::any_of(plan.flows.begin(), plan.flows.end(), [&](const Flow& f) { return f.group == g.label; });
    if (!named) plan.flows.push_back({g.node, g.node, g.amount, g.label});
  }
  return plan;
}

}  // namespace

PlayService::PlayService(PlayOptions options) : options_(std::move(options)) {}
PlayService::~PlayService() = default;

std::size_t PlayService::session_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

void PlayService::ExpireIdle() {
  const auto now = options_.now();
  std::lock_guard<std::mutex> lock(mu_);
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->touched > options_.ttl) {
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
}

std::string PlayService::HandleText(std::string_view text) {
  json message;
  try {
    message = json::parse(text);
  } catch (const json::parse_error& e) {
    return ErrorReply("bad_request", std::string("malformed JSON: ") + e.what()).dump();
  }
  return Handle(message).dump();
}

std::shared_ptr<PlayService::Session> PlayService::Find(const json& message) {
  if (!message.contains("session") || !message.at("session").is_string()) return nullptr;
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = sessions_.find(message.at("session").get<std::string>());
  return it == sessions_.end() ? nullptr : it->second;
}

json PlayService::Handle(const json& message) {
  ExpireIdle();
  if (!message.is_object() || !message.contains("type") || !message.at("type").is_string()) {
    return ErrorReply("bad_request", "message needs a string 'type'");
  }
  const std::string type = message.at("type").get<std::string>();
  if (type == "new") return Create(message);
  if (type != "move" && type != "export") return ErrorReply("bad_request", "unknown message type '" + type + "'");

  const auto session = Find(message);
  if (!session) return ErrorReply("not_found", "no such session (expired or never created)");
  std::lock_guard<std::mutex> lock(session->mu);
  session->touched = options_.now();
  if (type == "export") {
    return {{"type", "export"},
            {"session", session->id},
            {"trace", session->runner->outcome().trace},
            {"log", session->log}};
  }
  return Move(*session, message);
}

json PlayService::Create(const json& message) {
  if (!message.contains("config") || !message.at("config").is_object()) {
    return ErrorReply("bad_request", "'new' needs a 'config' object");
  }
  json doc = message.at("config");
  if (!doc.contains("strategy")) doc["strategy"] = {{"kind", "external"}};
  if (doc.at("strategy").value("kind", "") != "external") {
    return ErrorReply("invalid_config", "the attacker is the human player; strategy must be external");
  }
  auto session = std::make_shared<Session>();
  session->fractional = message.value("fractional", false);
  doc["parallel_subgames"] = session->fractional;
  doc["trace_advantages"] = true;
  try {
    // Environment problems get their own code so a client can point at them.
    const json& env_doc = doc.value("environment", json());
    if (env_doc.is_object()) {
      EnvironmentFromJson(env_doc);
    } else if (env_doc.is_string()) {
      std::filesystem::path file(env_doc.get<std::string>());
      if (file.is_relative()) file = std::filesystem::path(options_.base_dir) / file;
      LoadEnvironmentFile(file.string());
    }
  } catch (const EnvironmentError& e) {
    json err = ErrorReply("invalid_environment", e.what());
    err["witness"] = e.witness();
    return err;
  } catch (const InputError& e) {
    return ErrorReply("invalid_environment", e.what());
  }
  try {
    GameConfig cfg = ParseGameConfig(doc, options_.base_dir);
    session->required = RequiredAssets(cfg.env->path_length(), cfg.k, cfg.attacker_total);
    session->no_guarantee = cfg.defender_total < session->required;
    session->runner = std::make_unique<GameRunner>(std::move(cfg));
    if (!session->runner->finished()) {
      session->last_defender = FlowsToJson(session->runner->env().graph(), session->runner->DefenderMove());
    }
  } catch (const EnvironmentError& e) {
    json err = ErrorReply("invalid_environment", e.what());
    err["witness"] = e.witness();
    return err;
  } catch (const InputError& e) {
    return ErrorReply("invalid_config", e.what());
  } catch (const json::exception& e) {
    return ErrorReply("invalid_config", e.what());
  }
  json logged = message;
  logged.erase("session");
  session->log.push_back(std::move(logged));
  session->touched = options_.now();
  {
    std::lock_guard<std::mutex> lock(mu_);
    session->id = "s" + std::to_string(next_id_++);
    sessions_[session->id] = session;
  }
  return View(*session);
}

json PlayService::Move(Session& s, const json& message) {
  GameRunner& runner = *s.runner;
  if (runner.finished()) return ErrorReply("game_over", "the game has ended");
  const Graph& g = runner.env().graph();
  MovePlan plan;
  try {
    plan = LabelFlows(FlowsFromJson(g, message.value("flows", json())), runner.state()).Normalized();
  } catch (const Error& e) {
    return ErrorReply("illegal_move", e.what());
  } catch (const json::exception& e) {
    return ErrorReply("illegal_move", e.what());
  }
  const auto legal = LegalAttackerMoves(runner.state(), runner.env(), s.fractional);
  if (std::find(legal.begin(), legal.end(), plan) == legal.end()) {
    return ErrorReply("illegal_move", "not one of the legal moves for the current groups");
  }
  runner.AttackerMove(plan);
  runner.Evaluate();
  s.last_attacker = FlowsToJson(g, plan);
  s.last_defender = json::array();
  if (!runner.finished()) s.last_defender = FlowsToJson(g, runner.DefenderMove());
  json logged = message;
  logged.erase("session");
  s.log.push_back(std::move(logged));
  return View(s);
}

json PlayService::View(const Session& s) {
  const GameRunner& r = *s.runner;
  const Graph& g = r.env().graph();
  json visibility = json::array();
  for (NodeId v : r.visibility().members) visibility.push_back(g.name(v));
  json outcome = nullptr;
  if (r.finished()) {
    const auto& o = r.outcome();
    outcome = {{"result", ToString(o.result)},
               {"win_step", o.win_step ? json(*o.win_step) : json(nullptr)},
               {"witness", o.witness ? json(g.name(*o.witness)) : json(nullptr)}};
  }
  const bool awaiting = !r.finished() && r.state().phase == Phase::kAttacker;
  return {{"type", "state"},
          {"session", s.id},
          {"t", r.state().t},
          {"phase", ToString(r.state().phase)},
          {"defender_amounts", AmountsToJson(g, r.state().defender)},
          {"attacker_amounts", AmountsToJson(g, r.state().attacker)},
          {"groups", GroupsToJson(g, r.state().groups)},
          {"platoon_centers", r.defender().ForcesToJson()},
          {"advantages", r.last_advantages()},
          {"visibility", visibility},
          {"legal_moves", awaiting ? LegalMovesJson(g, LegalAttackerMoves(r.state(), r.env(), s.fractional))
                                   : json::array()},
          {"last_moves", {{"attacker", s.last_attacker}, {"defender", s.last_defender}}},
          {"outcome", outcome},
          {"no_guarantee", s.no_guarantee},
          {"required_assets", s.required.ToString()},
          {"fractional", s.fractional}};
}

json ReplaySessionLog(const std::vector<json>& log, const std::string& base_dir) {
  PlayService service(PlayOptions{std::chrono::hours(24), base_dir});
  json reply = ErrorReply("bad_request", "empty log");
  std::string id;
  for (json message : log) {
    if (!id.empty()) message["session"] = id;
    reply = service.Handle(message);
    if (reply.value("type", "") == "error") return reply;
    id = reply.value("session", id);
  }
  return reply;
}

}  // namespace ddab

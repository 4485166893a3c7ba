// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_PLAY_SERVICE_H_
#define DDAB_PLAY_SERVICE_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "ddab/engine.h"
#include "json.hpp"

namespace ddab {

// Every plan the attacker may submit: all-stay, one group moving whole to a
// neighbor, and with `fractional` one group splitting over two distinct
// nodes of its closed neighborhood with a SplitMenu() share. Other groups
// stay. Plans are normalized.
std::vector<MovePlan> LegalAttackerMoves(const GameState& state, const Environment& env, bool fractional);

struct PlayOptions {
  std::chrono::seconds ttl{30 * 60};
  // Relative environment paths in "new" configs resolve here.
  std::string base_dir = ".";
  std::function<std::chrono::steady_clock::time_point()> now = [] { return std::chrono::steady_clock::now(); };
};

// Human-vs-policy sessions behind a JSON message protocol. Client messages:
//   {"type": "new", "config": {...}, "fractional": false}
//   {"type": "move", "session": id, "flows": [{"from", "to", "amount", "group"}]}
//   {"type": "export", "session": id}
// Groups a move does not mention stay put.
// Replies are {"type": "state", ...}, {"type": "export", ...} or
// {"type": "error", "code", "message"}. A rejected message never changes a
// session. Safe to call from several threads.
class PlayService {
 public:
  explicit PlayService(PlayOptions options = {});
  ~PlayService();

  nlohmann::json Handle(const nlohmann::json& message);
  std::string HandleText(std::string_view text);

  std::size_t session_count() const;
  // Drops sessions idle longer than the TTL.
  void ExpireIdle();

 private:
  struct Session;

  nlohmann::json Create(const nlohmann::json& message);
  nlohmann::json Move(Session& session, const nlohmann::json& message);
  std::shared_ptr<Session> Find(const nlohmann::json& message);
  static nlohmann::json View(const Session& session);

  PlayOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  long next_id_ = 1;
};

// Feeds a session's client message log (as returned by "export") to a fresh
// service and returns the final state reply.
nlohmann::json ReplaySessionLog(const std::vector<nlohmann::json>& log, const std::string& base_dir = ".");

}  // namespace ddab

#endif  // DDAB_PLAY_SERVICE_H_

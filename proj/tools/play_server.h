// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_TOOLS_PLAY_SERVER_H_
#define DDAB_TOOLS_PLAY_SERVER_H_

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "ddab/play_service.h"

namespace ddab {

struct ServerOptions {
  std::string host = "127.0.0.1";
  // 0 picks a free port.
  unsigned short port = 8080;
  // Static files for GET requests; the message channel lives at /ws.
  std::string web_root = "web";
  PlayOptions play;
};

// WebSocket front end for PlayService plus a static file endpoint. One
// thread per connection; each connection handles one message at a time.
class PlayServer {
 public:
  explicit PlayServer(ServerOptions options);
  ~PlayServer();
  PlayServer(const PlayServer&) = delete;
  PlayServer& operator=(const PlayServer&) = delete;

  // Binds and starts accepting. Returns the bound port.
  unsigned short Start();
  void Stop();

  PlayService& service() { return service_; }

 private:
  struct Impl;
  void AcceptLoop();

  ServerOptions options_;
  PlayService service_;
  std::unique_ptr<Impl> impl_;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_thread_;
  std::mutex mu_;
  std::vector<std::thread> workers_;
  // Live connection sockets, shut down by Stop().
  std::map<long, int> open_;
  long next_connection_ = 0;
};

}  // namespace ddab

#endif  // DDAB_TOOLS_PLAY_SERVER_H_

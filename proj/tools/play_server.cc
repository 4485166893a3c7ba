// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "play_server.h"

#include <sys/socket.h>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spdlog/spdlog.h"

namespace ddab {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

struct PlayServer::Impl {
  asio::io_context io;
  tcp::acceptor acceptor{io};
  tcp::endpoint bound;
};

namespace {

const char* MimeType(const std::filesystem::path& file) {
  const std::string ext = file.extension().string();
  if (ext == ".html") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  return "application/octet-stream";
}

http::response<http::string_body> StaticFile(const std::string& root, const http::request<http::string_body>& req) {
  http::response<http::string_body> res;
  res.version(req.version());
  res.keep_alive(req.keep_alive());
  res.set(http::field::server, "ddab");
  auto fail = [&](http::status status, std::string body) {
    res.result(status);
    res.set(http::field::content_type, "text/plain");
    res.body() = std::move(body);
    res.prepare_payload();
    return res;
  };
  if (req.method() != http::verb::get && req.method() != http::verb::head) {
    return fail(http::status::method_not_allowed, "GET only\n");
  }
  std::string target(req.target());
  target = target.substr(0, target.find('?'));
  if (target.empty() || target[0] != '/' || target.find("..") != std::string::npos) {
    return fail(http::status::bad_request, "bad path\n");
  }
  if (target.back() == '/') target += "index.html";
  const std::filesystem::path file = std::filesystem::path(root) / target.substr(1);
  std::ifstream in(file, std::ios::binary);
  if (!in || std::filesystem::is_directory(file)) return fail(http::status::not_found, "not found\n");
  std::ostringstream body;
  body << in.rdbuf();
  res.result(http::status::ok);
  res.set(http::field::content_type, MimeType(file));
  res.body() = body.str();
  res.prepare_payload();
  return res;
}

void Converse(PlayService& service, tcp::socket& socket, const std::string& web_root) {
  beast::flat_buffer buffer;
  for (;;) {
    http::request<http::string_body> req;
    http::read(socket, buffer, req);
    if (websocket::is_upgrade(req)) {
      if (req.target() != "/ws") {
        http::write(socket, StaticFile(web_root, req));
        return;
      }
      websocket::stream<tcp::socket&> ws(socket);
      ws.accept(req);
      for (;;) {
        beast::flat_buffer frame;
        ws.read(frame);
        const std::string reply = service.HandleText(beast::buffers_to_string(frame.data()));
        ws.text(true);
        ws.write(asio::buffer(reply));
      }
    }
    auto res = StaticFile(web_root, req);
    const bool keep = res.keep_alive();
    http::write(socket, res);
    if (!keep) return;
  }
}

}  // namespace

PlayServer::PlayServer(ServerOptions options)
    : options_(std::move(options)), service_(options_.play), impl_(std::make_unique<Impl>()) {}

PlayServer::~PlayServer() { Stop(); }

unsigned short PlayServer::Start() {
  const tcp::endpoint endpoint(asio::ip::make_address(options_.host), options_.port);
  impl_->acceptor.open(endpoint.protocol());
  impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
  impl_->acceptor.bind(endpoint);
  impl_->acceptor.listen();
  impl_->bound = impl_->acceptor.local_endpoint();
  acceptor_thread_ = std::thread([this] { AcceptLoop(); });
  spdlog::info("serving {} on {}:{}", options_.web_root, options_.host, impl_->bound.port());
  return impl_->bound.port();
}

void PlayServer::AcceptLoop() {
  while (!stopping_) {
    tcp::socket socket(impl_->io);
    beast::error_code ec;
    impl_->acceptor.accept(socket, ec);
    if (ec || stopping_) continue;
    std::lock_guard<std::mutex> lock(mu_);
    const long id = next_connection_++;
    open_[id] = socket.native_handle();
    workers_.emplace_back([this, id, s = std::move(socket)]() mutable {
      try {
        Converse(service_, s, options_.web_root);
      } catch (const std::exception& e) {
        spdlog::debug("connection closed: {}", e.what());
      }
      std::lock_guard<std::mutex> done(mu_);
      open_.erase(id);
      beast::error_code ignored;
      s.close(ignored);
    });
  }
}

void PlayServer::Stop() {
  if (!acceptor_thread_.joinable() || stopping_.exchange(true)) return;
  // Wake the blocking accept with a throwaway connection.
  try {
    asio::io_context io;
    tcp::socket poke(io);
    poke.connect(tcp::endpoint(impl_->bound.address().is_unspecified() ? asio::ip::make_address("127.0.0.1")
                                                                         : impl_->bound.address(),
                               impl_->bound.port()));
  } catch (const std::exception&) {
  }
  acceptor_thread_.join();
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [id, fd] : open_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& w : workers) w.join();
  beast::error_code ec;
  impl_->acceptor.close(ec);
}

}  // namespace ddab

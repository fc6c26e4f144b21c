#include "stub_server.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include <httplib.h>

namespace eeguide::testing {

struct StubServer::Impl {
  Handler handler;
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<std::size_t> requests{0};
  std::atomic<std::size_t> active{0};
  std::atomic<std::size_t> peak{0};
  mutable std::mutex mu;
  std::string authorization;
};

StubServer::StubServer(Handler handler) : impl_(std::make_unique<Impl>()) {
  impl_->handler = std::move(handler);
  impl_->server.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
    auto& s = *impl_;
    ++s.requests;
    auto now = ++s.active;
    auto peak = s.peak.load();
    while (now > peak && !s.peak.compare_exchange_weak(peak, now)) {
    }
    {
      std::lock_guard lock(s.mu);
      s.authorization = req.get_header_value("Authorization");
    }
    Json body = Json::parse(req.body, nullptr, false);
    auto [status, payload] = s.handler(body);
    res.status = status;
    res.set_content(payload, "application/json");
    --s.active;
  });
  impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

StubServer::~StubServer() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string StubServer::base_url() const { return "http://127.0.0.1:" + std::to_string(impl_->port) + "/v1"; }
std::size_t StubServer::requests() const { return impl_->requests.load(); }
std::size_t StubServer::max_concurrency() const { return impl_->peak.load(); }

std::string StubServer::last_authorization() const {
  std::lock_guard lock(impl_->mu);
  return impl_->authorization;
}

std::string chat_envelope(const std::string& content) {
  Json j = {{"id", "stub"},
            {"object", "chat.completion"},
            {"choices", Json::array({{{"index", 0},
                                      {"message", {{"role", "assistant"}, {"content", content}}},
                                      {"finish_reason", "stop"}}})}};
  return j.dump();
}

}  // namespace eeguide::testing

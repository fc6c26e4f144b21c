#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eeguide/jsonl.hpp"

namespace eeguide {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  std::optional<double> temperature;
  std::optional<int> max_tokens;
};

struct ChatResponse {
  std::string text;
  std::string request_hash;
  std::string timestamp;  // time of the original (possibly cached) call
};

// Anything that answers chat requests: the HTTP gateway or a test stub.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
  virtual std::string model_name() const { return {}; }
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{30000};
};

struct EndpointConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model_name = "gpt-4o";
  std::string token_env = "EEGUIDE_API_KEY";
  std::size_t max_in_flight = 4;
  RetryPolicy retry;
  std::chrono::seconds timeout{120};
  double temperature = 1.0;
  int max_tokens = 4096;
  std::string cache_dir = "cache";
  bool offline = false;  // replay only; a cache miss is an error

  // Throws a config error listing every invalid field.
  void validate() const;
};

struct HttpResponse {
  int status = 0;  // 0 means the transport failed (timeout, refused...)
  std::string body;
  std::string error;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post(const std::string& url, const std::string& body,
                            const std::vector<std::pair<std::string, std::string>>& headers,
                            std::chrono::seconds timeout) = 0;
};

// cpp-httplib backed transport; supports http:// and https:// URLs.
std::unique_ptr<HttpTransport> make_http_transport();

std::string sha256_hex(std::string_view data);

struct Transcript {
  std::string hash;
  Json request;
  Json response;
  std::string timestamp;
  long long latency_ms = 0;
};

/// Content-addressed transcript store: `<dir>/<hash>.json`.
///
/// Reads take no lock; writes are serialized and land through a rename so a
/// concurrent reader never sees a partial file.
class ResponseCache {
 public:
  explicit ResponseCache(std::string dir) : dir_(std::move(dir)) {}

  std::optional<Transcript> load(const std::string& hash) const;
  void store(const Transcript& t);
  std::string path_for(const std::string& hash) const;
  const std::string& dir() const { return dir_; }
  std::size_t entry_count() const;

 private:
  std::string dir_;
  std::mutex write_mu_;
};

/// OpenAI-compatible `/chat/completions` client with record-replay cache,
/// bounded in-flight requests and exponential backoff on 429/5xx/timeouts.
class LlmGateway : public ChatClient {
 public:
  explicit LlmGateway(EndpointConfig cfg, std::unique_ptr<HttpTransport> transport = make_http_transport());

  ChatResponse complete(const ChatRequest& request) override;
  std::string model_name() const override { return cfg_.model_name; }

  // Order-preserving; at most max_in_flight requests run at once.
  std::vector<ChatResponse> complete_batch(const std::vector<ChatRequest>& requests);

  // The request body and its cache key, without sending anything.
  Json request_body(const ChatRequest& request) const;
  std::string request_hash(const Json& body) const;

  const EndpointConfig& config() const { return cfg_; }
  const ResponseCache& cache() const { return cache_; }
  std::size_t network_calls() const { return network_calls_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }

 private:
  Json send_with_retry(const Json& body);

  EndpointConfig cfg_;
  std::unique_ptr<HttpTransport> transport_;
  ResponseCache cache_;
  std::counting_semaphore<> in_flight_;
  std::atomic<std::size_t> network_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

// Extracts choices[0].message.content; throws an llm error otherwise.
std::string response_text(const Json& envelope);

}  // namespace eeguide

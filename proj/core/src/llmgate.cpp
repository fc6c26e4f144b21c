#include "eeguide/llmgate.hpp"

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <openssl/evp.h>

#include "eeguide/error.hpp"
#include "eeguide/parallel.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

namespace fs = std::filesystem;

void EndpointConfig::validate() const {
  std::vector<std::string> problems;
  if (base_url.empty()) problems.push_back("endpoint.base_url must not be empty");
  if (!base_url.empty() && !base_url.starts_with("http://") && !base_url.starts_with("https://")) {
    problems.push_back("endpoint.base_url must start with http:// or https://");
  }
  if (model_name.empty()) problems.push_back("endpoint.model must not be empty");
  if (max_in_flight < 1) problems.push_back("endpoint.max_in_flight must be >= 1");
  if (retry.max_attempts < 1) problems.push_back("endpoint.max_attempts must be >= 1");
  if (retry.multiplier < 1.0) problems.push_back("endpoint.backoff_multiplier must be >= 1");
  if (timeout.count() < 1) problems.push_back("endpoint.timeout_s must be >= 1");
  if (max_tokens < 1) problems.push_back("endpoint.max_tokens must be >= 1");
  if (cache_dir.empty()) problems.push_back("cache_dir must not be empty");
  if (!problems.empty()) {
    std::string msg = "invalid endpoint configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    fail(ErrorKind::kConfig, msg);
  }
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::kLlm, "SHA-256 computation failed");
  }
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

namespace {

class HttplibTransport : public HttpTransport {
 public:
  HttpResponse post(const std::string& url, const std::string& body,
                    const std::vector<std::pair<std::string, std::string>>& headers,
                    std::chrono::seconds timeout) override {
    // Split "scheme://host[:port]/path".
    auto scheme_end = url.find("://");
    auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto res = client.Post(path, h, body, "application/json");
    HttpResponse out;
    if (!res) {
      out.error = httplib::to_string(res.error());
      return out;
    }
    out.status = res->status;
    out.body = res->body;
    return out;
  }
};

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool transient(int status) { return status == 0 || status == 408 || status == 429 || status >= 500; }

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport() { return std::make_unique<HttplibTransport>(); }

std::string ResponseCache::path_for(const std::string& hash) const {
  return (fs::path(dir_) / (hash + ".json")).string();
}

std::optional<Transcript> ResponseCache::load(const std::string& hash) const {
  auto path = path_for(hash);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  Json j = read_json_file(path);
  Transcript t;
  t.hash = j.value("hash", hash);
  t.request = j.value("request", Json::object());
  t.response = j.value("response", Json::object());
  t.timestamp = j.value("timestamp", std::string{});
  t.latency_ms = j.value("latency_ms", 0LL);
  return t;
}

void ResponseCache::store(const Transcript& t) {
  std::lock_guard lock(write_mu_);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) fail(ErrorKind::kIo, fmt::format("cannot create cache directory '{}': {}", dir_, ec.message()));
  Json j = {{"hash", t.hash},
            {"request", t.request},
            {"response", t.response},
            {"timestamp", t.timestamp},
            {"latency_ms", t.latency_ms}};
  auto final_path = path_for(t.hash);
  auto tmp = final_path + ".tmp";
  write_json_file(tmp, j);
  fs::rename(tmp, final_path, ec);
  if (ec) fail(ErrorKind::kIo, fmt::format("cannot move cache entry into '{}': {}", final_path, ec.message()));
}

std::size_t ResponseCache::entry_count() const {
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return 0;
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir_, ec)) {
    if (entry.path().extension() == ".json") ++n;
  }
  return n;
}

std::string response_text(const Json& envelope) {
  try {
    const auto& content = envelope.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) fail(ErrorKind::kLlm, "malformed response envelope: content is not a string");
    return content.get<std::string>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::kLlm, fmt::format("malformed response envelope: {}", e.what()));
  }
}

LlmGateway::LlmGateway(EndpointConfig cfg, std::unique_ptr<HttpTransport> transport)
    : cfg_(std::move(cfg)),
      transport_(std::move(transport)),
      cache_(cfg_.cache_dir),
      in_flight_(static_cast<std::ptrdiff_t>(std::max<std::size_t>(cfg_.max_in_flight, 1))) {
  cfg_.validate();
}

Json LlmGateway::request_body(const ChatRequest& request) const {
  Json messages = Json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return {{"model", cfg_.model_name},
          {"messages", messages},
          {"temperature", request.temperature.value_or(cfg_.temperature)},
          {"max_tokens", request.max_tokens.value_or(cfg_.max_tokens)}};
}

std::string LlmGateway::request_hash(const Json& body) const {
  return sha256_hex(cfg_.model_name + "\n" + body.dump());
}

Json LlmGateway::send_with_retry(const Json& body) {
  std::vector<std::pair<std::string, std::string>> headers;
  if (const char* token = std::getenv(cfg_.token_env.c_str()); token != nullptr && *token != '\0') {
    headers.emplace_back("Authorization", fmt::format("Bearer {}", token));
  }
  std::string url = cfg_.base_url;
  while (url.ends_with('/')) url.pop_back();
  url += "/chat/completions";
  const std::string payload = body.dump();

  auto backoff = cfg_.retry.initial_backoff;
  std::string last_problem;
  for (int attempt = 1; attempt <= cfg_.retry.max_attempts; ++attempt) {
    HttpResponse res;
    {
      in_flight_.acquire();
      ++network_calls_;
      try {
        res = transport_->post(url, payload, headers, cfg_.timeout);
      } catch (...) {
        in_flight_.release();
        throw;
      }
      in_flight_.release();
    }
    if (res.status >= 200 && res.status < 300) {
      try {
        return Json::parse(res.body);
      } catch (const Json::parse_error& e) {
        fail(ErrorKind::kLlm, fmt::format("malformed response envelope: {}", e.what()));
      }
    }
    last_problem = res.status == 0 ? fmt::format("transport error: {}", res.error)
                                   : fmt::format("HTTP {}: {}", res.status, res.body.substr(0, 200));
    if (!transient(res.status)) {
      fail(ErrorKind::kLlm, fmt::format("permanent endpoint error ({})", last_problem));
    }
    if (attempt < cfg_.retry.max_attempts) {
      std::this_thread::sleep_for(backoff);
      auto next = std::chrono::duration_cast<std::chrono::milliseconds>(backoff * cfg_.retry.multiplier);
      backoff = std::min(next, cfg_.retry.max_backoff);
    }
  }
  fail(ErrorKind::kLlm,
       fmt::format("retries exhausted after {} attempts ({})", cfg_.retry.max_attempts, last_problem));
}

ChatResponse LlmGateway::complete(const ChatRequest& request) {
  Json body = request_body(request);
  std::string hash = request_hash(body);
  if (auto cached = cache_.load(hash)) {
    ++cache_hits_;
    return {response_text(cached->response), hash, cached->timestamp};
  }
  if (cfg_.offline) fail(ErrorKind::kLlm, fmt::format("cache miss for request {} in offline mode", hash));

  auto start = std::chrono::steady_clock::now();
  Json envelope = send_with_retry(body);
  auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::string text = response_text(envelope);
  Transcript t{hash, body, envelope, utc_timestamp(), latency.count()};
  cache_.store(t);
  return {std::move(text), hash, t.timestamp};
}

std::vector<ChatResponse> LlmGateway::complete_batch(const std::vector<ChatRequest>& requests) {
  std::vector<ChatResponse> out(requests.size());
  parallel_for(requests.size(), [&](std::size_t i) { out[i] = complete(requests[i]); }, cfg_.max_in_flight);
  return out;
}

}  // namespace eeguide

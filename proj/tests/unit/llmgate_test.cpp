#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <set>
#include <thread>

#include "eeguide/error.hpp"
#include "eeguide/llmgate.hpp"
#include "stub_server.hpp"
#include "support.hpp"

namespace eeguide {
namespace {

using namespace std::chrono_literals;
using testing::chat_envelope;
using testing::StubServer;
using testing::TempDir;

EndpointConfig endpoint(const StubServer& server, const TempDir& dir) {
  EndpointConfig cfg;
  cfg.base_url = server.base_url();
  cfg.model_name = "stub";
  cfg.token_env = "EEGUIDE_TEST_TOKEN";
  cfg.cache_dir = dir.file("cache");
  cfg.retry.initial_backoff = 1ms;
  cfg.retry.max_backoff = 5ms;
  cfg.timeout = 10s;
  return cfg;
}

ChatRequest ask(const std::string& text) { return {{{"user", text}}, std::nullopt, std::nullopt}; }

std::pair<int, std::string> echo(const Json& body) {
  return {200, chat_envelope("echo: " + body["messages"].back()["content"].get<std::string>())};
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Gateway, RetriesRateLimitThenSucceeds) {
  std::atomic<int> calls{0};
  StubServer server([&](const Json&) -> std::pair<int, std::string> {
    if (++calls <= 2) return {429, R"({"error": "slow down"})"};
    return {200, chat_envelope("ok")};
  });
  TempDir dir;
  LlmGateway gw(endpoint(server, dir));
  auto res = gw.complete(ask("hi"));
  EXPECT_EQ(res.text, "ok");
  EXPECT_EQ(server.requests(), 3u);
  EXPECT_EQ(gw.network_calls(), 3u);
}

TEST(Gateway, ServerErrorsExhaustRetries) {
  StubServer server([](const Json&) { return std::pair<int, std::string>{503, "down"}; });
  TempDir dir;
  auto cfg = endpoint(server, dir);
  cfg.retry.max_attempts = 3;
  LlmGateway gw(cfg);
  try {
    gw.complete(ask("hi"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLlm);
    EXPECT_NE(std::string(e.what()).find("retries exhausted"), std::string::npos);
  }
  EXPECT_EQ(server.requests(), 3u);
}

TEST(Gateway, UnauthorizedFailsWithoutRetry) {
  StubServer server([](const Json&) { return std::pair<int, std::string>{401, R"({"error": "bad key"})"}; });
  TempDir dir;
  LlmGateway gw(endpoint(server, dir));
  try {
    gw.complete(ask("hi"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLlm);
    EXPECT_NE(std::string(e.what()).find("401"), std::string::npos);
  }
  EXPECT_EQ(server.requests(), 1u);
  EXPECT_EQ(gw.cache().entry_count(), 0u);
}

TEST(Gateway, SendsBearerTokenAndModel) {
  std::string model;
  StubServer server([&](const Json& body) {
    model = body["model"].get<std::string>();
    return echo(body);
  });
  TempDir dir;
  ::setenv("EEGUIDE_TEST_TOKEN", "sk-test", 1);
  LlmGateway gw(endpoint(server, dir));
  gw.complete(ask("hi"));
  ::unsetenv("EEGUIDE_TEST_TOKEN");
  EXPECT_EQ(server.last_authorization(), "Bearer sk-test");
  EXPECT_EQ(model, "stub");
}

TEST(Gateway, BatchRespectsConcurrencyBound) {
  StubServer server([](const Json& body) {
    std::this_thread::sleep_for(15ms);
    return echo(body);
  });
  TempDir dir;
  auto cfg = endpoint(server, dir);
  cfg.max_in_flight = 8;
  LlmGateway gw(cfg);
  std::vector<ChatRequest> reqs;
  for (int i = 0; i < 100; ++i) reqs.push_back(ask("q" + std::to_string(i)));
  auto out = gw.complete_batch(reqs);
  ASSERT_EQ(out.size(), 100u);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(out[i].text, "echo: q" + std::to_string(i));
  EXPECT_EQ(server.requests(), 100u);
  EXPECT_LE(server.max_concurrency(), 8u);
  EXPECT_GE(server.max_concurrency(), 2u);
}

TEST(Gateway, EmptyBatch) {
  StubServer server(echo);
  TempDir dir;
  LlmGateway gw(endpoint(server, dir));
  EXPECT_TRUE(gw.complete_batch({}).empty());
  EXPECT_EQ(server.requests(), 0u);
}

TEST(Gateway, CacheReplayNeedsNoNetwork) {
  TempDir dir;
  std::vector<std::string> first;
  {
    StubServer server(echo);
    LlmGateway gw(endpoint(server, dir));
    for (const char* q : {"a", "b", "c"}) first.push_back(gw.complete(ask(q)).text);
    EXPECT_EQ(gw.cache().entry_count(), 3u);
  }
  StubServer dead([](const Json&) { return std::pair<int, std::string>{500, "should not be called"}; });
  auto cfg = endpoint(dead, dir);
  cfg.offline = true;
  LlmGateway replay(cfg);
  std::vector<std::string> second;
  for (const char* q : {"a", "b", "c"}) second.push_back(replay.complete(ask(q)).text);
  EXPECT_EQ(first, second);
  EXPECT_EQ(dead.requests(), 0u);
  EXPECT_EQ(replay.network_calls(), 0u);
  EXPECT_EQ(replay.cache_hits(), 3u);
}

TEST(Gateway, OfflineMissIsError) {
  StubServer server(echo);
  TempDir dir;
  auto cfg = endpoint(server, dir);
  cfg.offline = true;
  LlmGateway gw(cfg);
  try {
    gw.complete(ask("never seen"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLlm);
    EXPECT_NE(std::string(e.what()).find("cache miss"), std::string::npos);
  }
  EXPECT_EQ(server.requests(), 0u);
}

TEST(Gateway, MalformedEnvelope) {
  StubServer server([](const Json&) { return std::pair<int, std::string>{200, R"({"choices": []})"}; });
  TempDir dir;
  LlmGateway gw(endpoint(server, dir));
  try {
    gw.complete(ask("hi"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLlm);
    EXPECT_NE(std::string(e.what()).find("malformed response envelope"), std::string::npos);
  }
}

TEST(Gateway, RefusedConnectionIsTransient) {
  TempDir dir;
  EndpointConfig cfg;
  cfg.base_url = "http://127.0.0.1:1/v1";
  cfg.cache_dir = dir.file("cache");
  cfg.retry.max_attempts = 2;
  cfg.retry.initial_backoff = 1ms;
  cfg.timeout = 2s;
  LlmGateway gw(cfg);
  try {
    gw.complete(ask("hi"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("retries exhausted after 2"), std::string::npos);
  }
  EXPECT_EQ(gw.network_calls(), 2u);
}

TEST(Gateway, HashCoversContentTemperatureAndModel) {
  TempDir dir;
  EndpointConfig cfg;
  cfg.cache_dir = dir.file("cache");
  LlmGateway gw(cfg);
  std::set<std::string> hashes;
  hashes.insert(gw.request_hash(gw.request_body(ask("a"))));
  hashes.insert(gw.request_hash(gw.request_body(ask("b"))));
  hashes.insert(gw.request_hash(gw.request_body({{{"user", "a"}}, 0.0, std::nullopt})));
  hashes.insert(gw.request_hash(gw.request_body({{{"system", "a"}}, std::nullopt, std::nullopt})));
  cfg.model_name = "other";
  LlmGateway other(cfg);
  hashes.insert(other.request_hash(other.request_body(ask("a"))));
  EXPECT_EQ(hashes.size(), 5u);
  EXPECT_EQ(gw.request_hash(gw.request_body(ask("a"))), gw.request_hash(gw.request_body(ask("a"))));
}

TEST(Gateway, CachedTimestampIsOriginal) {
  StubServer server(echo);
  TempDir dir;
  LlmGateway gw(endpoint(server, dir));
  auto a = gw.complete(ask("x"));
  std::this_thread::sleep_for(1100ms);
  auto b = gw.complete(ask("x"));
  EXPECT_EQ(a.timestamp, b.timestamp);
  EXPECT_EQ(a.request_hash, b.request_hash);
  EXPECT_EQ(gw.cache_hits(), 1u);
}

TEST(EndpointConfig, ValidateListsEveryProblem) {
  EndpointConfig cfg;
  cfg.base_url = "ftp://x";
  cfg.max_in_flight = 0;
  cfg.retry.max_attempts = 0;
  try {
    cfg.validate();
    FAIL();
  } catch (const Error& e) {
    std::string msg = e.what();
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    EXPECT_NE(msg.find("base_url"), std::string::npos);
    EXPECT_NE(msg.find("max_in_flight"), std::string::npos);
    EXPECT_NE(msg.find("max_attempts"), std::string::npos);
  }
}

TEST(ResponseText, ExtractsContent) {
  EXPECT_EQ(response_text(Json::parse(chat_envelope("hello"))), "hello");
  EXPECT_THROW(response_text(Json::parse(R"({"choices": [{"message": {"content": 3}}]})")), Error);
}

}  // namespace
}  // namespace eeguide

#include "config.hpp"

#include <set>
#include <vector>

#include <fmt/format.h>

#include "eeguide/error.hpp"

namespace eeguide::cli {

namespace fs = std::filesystem;

std::string Config::resolve(const std::string& path) const {
  if (path.empty()) return path;
  fs::path p(path);
  return p.is_absolute() ? p.string() : (workspace / p).lexically_normal().string();
}

Json Config::to_json() const {
  return {{"workspace", workspace.string()},
          {"ontology", ontology},
          {"dataset_name", dataset_name},
          {"seed", seed},
          {"seeds", {{"subset", seeds.subset}, {"exemplars", seeds.exemplars}, {"build", seeds.build}}},
          {"strict", strict},
          {"workers", workers},
          {"variant", std::string(eeguide::to_string(variant))},
          {"guidelines", guidelines},
          {"ns", {{"enabled", with_ns}, {"count", ns_count}}},
          {"cache_dir", endpoint.cache_dir},
          {"endpoint",
           {{"base_url", endpoint.base_url},
            {"model", endpoint.model_name},
            {"token_env", endpoint.token_env},
            {"max_in_flight", endpoint.max_in_flight},
            {"max_attempts", endpoint.retry.max_attempts},
            {"initial_backoff_ms", endpoint.retry.initial_backoff.count()},
            {"backoff_multiplier", endpoint.retry.multiplier},
            {"max_backoff_ms", endpoint.retry.max_backoff.count()},
            {"timeout_s", endpoint.timeout.count()},
            {"temperature", endpoint.temperature},
            {"max_tokens", endpoint.max_tokens},
            {"offline", endpoint.offline}}},
          {"generation",
           {{"max_attempts", generation.max_attempts},
            {"temperature", generation.temperature},
            {"consolidation_temperature", generation.consolidation_temperature}}}};
}

namespace {

// Collects problems instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> problems;

  void check_keys(const Json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
    for (const auto& [k, _] : obj.items()) {
      if (!allowed.contains(k)) problems.push_back(fmt::format("{}{}: unknown key", prefix, k));
    }
  }

  const Json* object(const Json& obj, const std::string& key, const std::string& prefix) {
    if (!obj.contains(key)) return nullptr;
    const auto& v = obj.at(key);
    if (!v.is_object()) {
      problems.push_back(fmt::format("{}{}: expected an object", prefix, key));
      return nullptr;
    }
    return &v;
  }

  void str(const Json& obj, const std::string& key, const std::string& prefix, std::string& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_string()) {
      problems.push_back(fmt::format("{}{}: expected a string", prefix, key));
      return;
    }
    out = obj.at(key).get<std::string>();
  }

  void boolean(const Json& obj, const std::string& key, const std::string& prefix, bool& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_boolean()) {
      problems.push_back(fmt::format("{}{}: expected true or false", prefix, key));
      return;
    }
    out = obj.at(key).get<bool>();
  }

  template <typename T>
  bool unsigned_int(const Json& obj, const std::string& key, const std::string& prefix, T& out, T min = 0) {
    if (!obj.contains(key)) return false;
    const auto& v = obj.at(key);
    bool ok = v.is_number_integer();
    if (ok) {
      ok = v.is_number_unsigned() ? v.get<unsigned long long>() >= static_cast<unsigned long long>(min)
                                  : v.get<long long>() >= static_cast<long long>(min);
    }
    if (!ok) {
      problems.push_back(fmt::format("{}{}: expected an integer >= {}", prefix, key, min));
      return false;
    }
    out = v.get<T>();
    return true;
  }

  void number(const Json& obj, const std::string& key, const std::string& prefix, double& out, double min) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number() || v.get<double>() < min) {
      problems.push_back(fmt::format("{}{}: expected a number >= {}", prefix, key, min));
      return;
    }
    out = v.get<double>();
  }
};

}  // namespace

Config config_from_json(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) fail(ErrorKind::kConfig, "config must be a JSON object");
  Reader r;
  Config c;
  r.check_keys(j, "", {"workspace", "ontology", "dataset_name", "seed", "seeds", "strict", "workers", "variant",
                       "guidelines", "ns", "cache_dir", "endpoint", "generation"});

  std::string workspace;
  r.str(j, "workspace", "", workspace);
  c.workspace = workspace.empty() ? base_dir : (fs::path(workspace).is_absolute() ? fs::path(workspace)
                                                                                  : base_dir / workspace);
  r.str(j, "ontology", "", c.ontology);
  r.str(j, "dataset_name", "", c.dataset_name);
  r.unsigned_int(j, "seed", "", c.seed);
  c.seeds = {c.seed, c.seed, c.seed};
  if (const auto* s = r.object(j, "seeds", "")) {
    r.check_keys(*s, "seeds.", {"subset", "exemplars", "build"});
    r.unsigned_int(*s, "subset", "seeds.", c.seeds.subset);
    r.unsigned_int(*s, "exemplars", "seeds.", c.seeds.exemplars);
    r.unsigned_int(*s, "build", "seeds.", c.seeds.build);
  }
  r.boolean(j, "strict", "", c.strict);
  r.unsigned_int(j, "workers", "", c.workers);
  std::string variant;
  r.str(j, "variant", "", variant);
  if (!variant.empty()) {
    try {
      c.variant = parse_variant(variant);
    } catch (const Error& e) {
      r.problems.push_back(fmt::format("variant: {}", e.what()));
    }
  }
  r.str(j, "guidelines", "", c.guidelines);
  if (const auto* ns = r.object(j, "ns", "")) {
    r.check_keys(*ns, "ns.", {"enabled", "count"});
    r.boolean(*ns, "enabled", "ns.", c.with_ns);
    r.unsigned_int(*ns, "count", "ns.", c.ns_count);
  }
  r.str(j, "cache_dir", "", c.endpoint.cache_dir);
  if (const auto* e = r.object(j, "endpoint", "")) {
    const std::string p = "endpoint.";
    r.check_keys(*e, p, {"base_url", "model", "token_env", "max_in_flight", "max_attempts", "initial_backoff_ms",
                         "backoff_multiplier", "max_backoff_ms", "timeout_s", "temperature", "max_tokens",
                         "offline"});
    r.str(*e, "base_url", p, c.endpoint.base_url);
    r.str(*e, "model", p, c.endpoint.model_name);
    r.str(*e, "token_env", p, c.endpoint.token_env);
    r.unsigned_int<std::size_t>(*e, "max_in_flight", p, c.endpoint.max_in_flight, 1);
    r.unsigned_int(*e, "max_attempts", p, c.endpoint.retry.max_attempts, 1);
    long long ms = 0;
    if (r.unsigned_int(*e, "initial_backoff_ms", p, ms)) c.endpoint.retry.initial_backoff = std::chrono::milliseconds(ms);
    if (r.unsigned_int(*e, "max_backoff_ms", p, ms)) c.endpoint.retry.max_backoff = std::chrono::milliseconds(ms);
    r.number(*e, "backoff_multiplier", p, c.endpoint.retry.multiplier, 1.0);
    long long secs = 0;
    if (r.unsigned_int(*e, "timeout_s", p, secs, 1LL)) c.endpoint.timeout = std::chrono::seconds(secs);
    r.number(*e, "temperature", p, c.endpoint.temperature, 0.0);
    r.unsigned_int(*e, "max_tokens", p, c.endpoint.max_tokens, 1);
    r.boolean(*e, "offline", p, c.endpoint.offline);
  }
  if (const auto* g = r.object(j, "generation", "")) {
    const std::string p = "generation.";
    r.check_keys(*g, p, {"max_attempts", "temperature", "consolidation_temperature"});
    r.unsigned_int(*g, "max_attempts", p, c.generation.max_attempts, 1);
    r.number(*g, "temperature", p, c.generation.temperature, 0.0);
    r.number(*g, "consolidation_temperature", p, c.generation.consolidation_temperature, 0.0);
  }

  if (!r.problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : r.problems) msg += "\n  " + p;
    fail(ErrorKind::kConfig, msg);
  }
  return c;
}

Config load_config(const std::string& path) {
  Json j;
  try {
    j = read_json_file(path);
  } catch (const Error& e) {
    fail(e.kind() == ErrorKind::kIo && !fs::exists(path) ? ErrorKind::kConfig : e.kind(), e.what());
  }
  auto base = fs::path(path).parent_path();
  if (base.empty()) base = ".";
  return config_from_json(j, base);
}

}  // namespace eeguide::cli

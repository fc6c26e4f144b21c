#include "eeguide/conformance.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>

#include <fmt/format.h>

#include "eeguide/error.hpp"

namespace eeguide {

namespace fs = std::filesystem;

Json to_request(const ConformanceCase& c) { return {{"id", c.id}, {"schema", c.schema}, {"output", c.output}}; }

Json normalized_events(const PredictionRecord& record) {
  Json out = Json::array();
  for (const auto& ev : record.events) {
    Json args = Json::object();
    for (const auto& [role, values] : ev.arguments) args[role] = values;
    out.push_back({{"event_type", ev.event_type}, {"mention", ev.mention}, {"arguments", args}});
  }
  return out;
}

std::vector<ConformanceCase> conformance_cases(std::span<const PromptRecord> records,
                                               std::span<const std::string> outputs) {
  if (!outputs.empty() && outputs.size() != records.size()) {
    fail(ErrorKind::kUsage, "conformance outputs must match the prompt records one to one");
  }
  std::vector<ConformanceCase> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (outputs.empty() && !r.output) continue;
    out.push_back({fmt::format("{}#{}#{}", r.instance_id, r.event_type, i), schema_from_input(r.input),
                   outputs.empty() ? *r.output : outputs[i]});
  }
  return out;
}

namespace {

// Order-insensitive on argument keys; the oracle reports dataclass field order.
bool same_events(const Json& a, const Json& b) {
  if (!a.is_array() || !b.is_array() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (!x.is_object() || !y.is_object()) return false;
    if (x.value("event_type", Json()) != y.value("event_type", Json())) return false;
    if (x.value("mention", Json()) != y.value("mention", Json())) return false;
    const auto xa = x.value("arguments", Json::object());
    const auto ya = y.value("arguments", Json::object());
    if (!xa.is_object() || !ya.is_object() || xa.size() != ya.size()) return false;
    for (const auto& [k, v] : xa.items()) {
      if (!ya.contains(k) || ya.at(k) != v) return false;
    }
  }
  return true;
}

}  // namespace

Json ConformanceSummary::to_json() const {
  Json m = Json::array();
  for (const auto& x : mismatches) m.push_back({{"id", x.id}, {"reason", x.reason}});
  return {{"cases", cases},           {"clean_ok", clean_ok},         {"clean_ok_agree", clean_ok_agree},
          {"primary_failed", primary_failed}, {"both_failed", both_failed}, {"other", other},
          {"mismatches", m}};
}

ConformanceSummary compare_with_oracle(std::span<const ConformanceCase> cases, std::span<const Json> responses,
                                       const Ontology& ontology) {
  std::map<std::string, const Json*> by_id;
  for (const auto& r : responses) {
    if (r.is_object() && r.contains("id") && r.at("id").is_string()) by_id[r.at("id").get<std::string>()] = &r;
  }
  ConformanceSummary s;
  s.cases = cases.size();
  for (const auto& c : cases) {
    auto record = parse_output(c.output, ontology);
    auto it = by_id.find(c.id);
    if (it == by_id.end()) {
      s.mismatches.push_back({c.id, "no oracle response"});
      continue;
    }
    const Json& resp = *it->second;
    const bool oracle_ok = resp.value("status", "") == "ok";
    if (record.status == ParseStatus::kOk && record.diagnostics.empty()) {
      ++s.clean_ok;
      if (!oracle_ok) {
        s.mismatches.push_back({c.id, fmt::format("oracle failed: {}", resp.value("error", ""))});
      } else if (!same_events(normalized_events(record), resp.value("events", Json::array()))) {
        s.mismatches.push_back({c.id, "events differ"});
      } else {
        ++s.clean_ok_agree;
      }
    } else if (record.status == ParseStatus::kParseError) {
      ++s.primary_failed;
      if (oracle_ok) {
        s.mismatches.push_back({c.id, "oracle accepted a parse_error output"});
      } else {
        ++s.both_failed;
      }
    } else {
      ++s.other;
    }
  }
  return s;
}

std::vector<Json> run_oracle(const std::string& command, std::span<const ConformanceCase> cases,
                             const std::string& work_dir) {
  std::error_code ec;
  fs::create_directories(work_dir, ec);
  const auto in = (fs::path(work_dir) / "oracle_requests.jsonl").string();
  const auto out = (fs::path(work_dir) / "oracle_responses.jsonl").string();
  std::vector<Json> rows;
  rows.reserve(cases.size());
  for (const auto& c : cases) rows.push_back(to_request(c));
  write_jsonl(in, rows);
  const auto cmd = fmt::format("{} < '{}' > '{}'", command, in, out);
  if (int rc = std::system(cmd.c_str()); rc != 0) {
    fail(ErrorKind::kIo, fmt::format("oracle command failed with status {}: {}", rc, command));
  }
  return read_jsonl(out);
}

}  // namespace eeguide

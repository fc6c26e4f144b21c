#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eeguide/codefmt.hpp"
#include "eeguide/jsonl.hpp"
#include "eeguide/ontology.hpp"
#include "eeguide/output_parser.hpp"

namespace eeguide {

// Exchange with the interpreter-backed oracle, which executes the schema
// block and the output string as real dataclass code.
//   request:  {"id", "schema", "output"}
//   response: {"id", "status": "ok", "events": [...]} or {"id", "status": "error", "error"}
// Events are normalized as {"event_type", "mention", "arguments": {role: [...]}}.

struct ConformanceCase {
  std::string id;
  std::string schema;
  std::string output;
};

Json to_request(const ConformanceCase& c);
Json normalized_events(const PredictionRecord& record);

// One case per prompt record carrying an output; `outputs` may replace the
// gold outputs (same length as `records`) to probe malformed generations.
std::vector<ConformanceCase> conformance_cases(std::span<const PromptRecord> records,
                                               std::span<const std::string> outputs = {});

struct ConformanceMismatch {
  std::string id;
  std::string reason;
};

struct ConformanceSummary {
  std::size_t cases = 0;
  std::size_t clean_ok = 0;        // primary ok without diagnostics
  std::size_t clean_ok_agree = 0;  // ... and the oracle produced equal events
  std::size_t primary_failed = 0;  // primary parse_error
  std::size_t both_failed = 0;     // ... and the oracle failed too
  std::size_t other = 0;           // ok with diagnostics or validation_error; not compared
  std::vector<ConformanceMismatch> mismatches;

  bool passed() const { return mismatches.empty(); }
  Json to_json() const;
};

ConformanceSummary compare_with_oracle(std::span<const ConformanceCase> cases, std::span<const Json> responses,
                                       const Ontology& ontology);

// Runs `command` as a filter: requests on stdin, responses on stdout.
std::vector<Json> run_oracle(const std::string& command, std::span<const ConformanceCase> cases,
                             const std::string& work_dir);

}  // namespace eeguide

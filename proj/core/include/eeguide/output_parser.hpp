#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eeguide/jsonl.hpp"
#include "eeguide/ontology.hpp"

namespace eeguide {

enum class ParseStatus { kOk, kParseError, kValidationError };

std::string_view to_string(ParseStatus s);
ParseStatus parse_status_from_string(std::string_view s);

enum class DiagnosticKind {
  kGrammar,               // fatal: text does not match the output grammar
  kUnknownClass,          // fatal: constructor is not an ontology event type
  kMissingMention,        // fatal: event dropped
  kHallucinatedArgument,  // keyword dropped, event kept
  kMissingArgument,       // role absent, filled with []
  kNonListValue,          // role given a bare string, coerced to [s]
  kNonStringMention,      // mention given as a one-element list, unwrapped
  kOffPromptClass,        // constructor differs from the prompted type
};

std::string_view to_string(DiagnosticKind k);

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
  bool fatal = false;

  bool operator==(const Diagnostic&) const = default;
};

using RoleValues = std::vector<std::pair<std::string, std::vector<std::string>>>;

struct PredictedEvent {
  std::string event_type;
  std::string mention;
  RoleValues arguments;  // every role of the type, ontology order
  std::string instance_id;
  std::string prompted_type;

  const std::vector<std::string>* role(std::string_view name) const;
  // Equality on type, mention and arguments; ignores the source.
  bool same_content(const PredictedEvent& other) const;
};

struct PredictionRecord {
  std::string instance_id;
  std::string prompted_type;
  std::string raw_text;
  ParseStatus status = ParseStatus::kOk;
  std::vector<PredictedEvent> events;
  std::vector<Diagnostic> diagnostics;

  bool has_fatal() const;
  Json to_json() const;
};

/// Parses one model generation under the output grammar
///
///   result = "[" [call {"," call}] [","] "]"
///   call   = NAME "(" kw {"," kw} [","] ")"
///   kw     = NAME "=" (string | list)
///   list   = "[" [string {"," string}] [","] "]"
///
/// with single- or double-quoted strings and backslash escapes. Surrounding
/// code fences and a leading `result =` are stripped. Never throws: every
/// failure is reported through the status and diagnostics.
PredictionRecord parse_output(std::string_view raw, const Ontology& ontology, std::string_view instance_id = {},
                              std::string_view prompted_type = {});

// Prediction input file rows: {instance_id, prompted_type, raw_text}.
std::vector<PredictionRecord> parse_prediction_file(const std::string& path, const Ontology& ontology,
                                                    std::size_t workers = 0);

using AggregatedPredictions = std::map<std::string, std::vector<PredictedEvent>>;

// Events of all prompted types per instance; identical events produced by
// different prompts are kept once.
AggregatedPredictions aggregate(std::span<const PredictionRecord> records);

}  // namespace eeguide

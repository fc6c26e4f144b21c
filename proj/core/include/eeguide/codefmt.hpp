#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eeguide/corpus.hpp"
#include "eeguide/guideline_set.hpp"
#include "eeguide/jsonl.hpp"
#include "eeguide/ontology.hpp"
#include "eeguide/rng.hpp"

namespace eeguide {

inline constexpr std::string_view kTaskInstruction =
    "# This is an event extraction task where the goal is to extract structured events from the text. "
    "A structured event contains an event trigger word, an event type, the arguments participating in "
    "the event, and their roles in the event. For each different event type, please output the extracted "
    "information from the text into python-style dictionaries where the first key will be 'mention' with "
    "the value of the event trigger. Next, please output the arguments and their roles following the same "
    "format. The event type definitions and their argument roles are defined next.";

inline constexpr std::string_view kMentionDescription = "The text span that triggers the event.";
inline constexpr std::string_view kResultStub = "result = \n";

struct SchemaRendering {
  std::string event_type;
  GuidelineVariant variant = GuidelineVariant::kNoGuideline;
  std::optional<std::size_t> guideline_index;
  std::string text;
};

/// Renders the event schema as a dataclass block:
///
///   @dataclass
///   class Extradite(JusticeEvent):
///       """<event definition>"""
///       mention: str  # The text span that triggers the event.
///       agent: List  # <role definition>
///
/// The docstring and comments appear only for guideline variants. `index`
/// selects one of the five sampled definitions for P/PN/PS and must be 0 for
/// single-definition variants.
SchemaRendering render_schema(const EventTypeDef& type, GuidelineVariant variant,
                              const GuidelineSet* guidelines = nullptr,
                              std::optional<std::size_t> index = std::nullopt);

// Gold events of one type as constructor calls, roles in ontology order:
// [Extradite(mention="extradited", agent=["government"], origin=[], ...)].
std::string render_output(std::span<const GoldEvent> events, const Ontology& ontology);

// Schema block + text block + result stub.
std::string render_input(std::string_view schema_text, std::string_view sentence);

struct ParsedField {
  std::string name;
  std::string type;                    // "str" for mention, "List" otherwise
  std::optional<std::string> comment;  // trailing comment text
};

struct ParsedSchema {
  std::string class_name;
  std::string parent;
  std::optional<std::string> docstring;
  std::vector<ParsedField> fields;
};

// Parses a rendered schema block; throws a validation error on any deviation
// from the block grammar.
ParsedSchema parse_schema(std::string_view text);

// Extracts the schema block from a prompt input built by render_input.
std::string schema_from_input(std::string_view input);

struct PromptRecord {
  std::string doc_id;
  std::string wnd_id;
  std::string instance_id;
  std::string dataset_name;
  std::string task_type = "E2E";
  std::string is_auth = "0";
  std::string instruction;
  std::string input;
  std::optional<std::string> output;
  // Not exported: the prompted type is recoverable from the schema block.
  std::string event_type;
  std::optional<std::size_t> guideline_index;

  Json to_json() const;
  static PromptRecord from_json(const Json& j);
  bool operator==(const PromptRecord&) const = default;
};

struct PromptContext {
  const Ontology* ontology = nullptr;
  GuidelineVariant variant = GuidelineVariant::kNoGuideline;
  const GuidelineStore* guidelines = nullptr;
  std::string dataset_name;
};

PromptRecord build_prompt(const SentenceInstance& instance, std::string_view event_type, const PromptContext& ctx,
                          std::optional<std::size_t> guideline_index, bool with_output);

// Draws the guideline index from `rng` for the five-sample variants.
PromptRecord build_prompt(const SentenceInstance& instance, std::string_view event_type, const PromptContext& ctx,
                          Rng& rng, bool with_output);

std::size_t export_jsonl(std::span<const PromptRecord> records, const std::string& path);
std::vector<PromptRecord> read_prompt_jsonl(const std::string& path);

}  // namespace eeguide

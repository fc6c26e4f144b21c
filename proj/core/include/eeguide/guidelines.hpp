#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eeguide/corpus.hpp"
#include "eeguide/error.hpp"
#include "eeguide/guideline_set.hpp"
#include "eeguide/jsonl.hpp"
#include "eeguide/llmgate.hpp"
#include "eeguide/ontology.hpp"

namespace eeguide {

enum class NegativeMode { kNone, kRandom, kSibling };

std::string_view to_string(NegativeMode m);
// P → none, PN → random, PS → sibling. Other variants are not generated.
NegativeMode negative_mode_for(GuidelineVariant v);

struct ExemplarBundle {
  std::string event_type;
  NegativeMode mode = NegativeMode::kNone;
  std::vector<SentenceInstance> positives;
  std::vector<SentenceInstance> negatives;
  // Shortfalls and fallbacks worth logging.
  std::vector<std::string> notes;
};

struct ExemplarOptions {
  std::size_t positives = 10;
  std::size_t negatives = 15;
};

/// Picks generation exemplars for `event_type`.
///
/// Positives are the instances containing the type, seeded-shuffled and then
/// stably ordered by role coverage so argument-rich ones come first.
/// Negatives are event-bearing instances without the type: any other type for
/// kRandom, a sibling type for kSibling. A sibling pool smaller than the
/// quota is topped up from the random pool and noted.
ExemplarBundle select_exemplars(const CorpusSplit& split, const Ontology& ontology, std::string_view event_type,
                                NegativeMode mode, std::uint64_t seed, const ExemplarOptions& options = {});

std::string build_generation_prompt(const EventTypeDef& type, const ExemplarBundle& bundle);
std::string build_consolidation_prompt(const EventTypeDef& type, const GuidelineSet& set5);

// First ```json fenced block, else the span from the first '{' to the last
// '}'. Returns nullopt when neither parses.
std::optional<Json> extract_json(std::string_view text);

// Turns a generation or consolidation answer into a set of `variant`.
// Throws a validation error naming the first missing role or short list.
GuidelineSet guideline_set_from_answer(const Json& answer, const EventTypeDef& type, GuidelineVariant variant);

class GenerationError : public Error {
 public:
  GenerationError(ErrorKind kind, const std::string& message, std::string raw_response)
      : Error(kind, message), raw_response_(std::move(raw_response)) {}

  const std::string& raw_response() const { return raw_response_; }

 private:
  std::string raw_response_;
};

struct GenerationOptions {
  int max_attempts = 3;
  double temperature = 1.0;
  double consolidation_temperature = 0.0;
};

// Sends the generation prompt and validates five definitions per item. A
// malformed answer is retried with the problem appended to the conversation.
GuidelineSet generate(const EventTypeDef& type, const ExemplarBundle& bundle, GuidelineVariant variant,
                      ChatClient& client, const GenerationOptions& options = {});

// P/PN/PS set of five → PN-Int/PS-Int set of one.
GuidelineSet consolidate(const EventTypeDef& type, const GuidelineSet& set5, ChatClient& client,
                         const GenerationOptions& options = {});

GuidelineVariant consolidated_variant(GuidelineVariant v);

// Generates every ontology type that has at least one positive in `split`,
// in parallel. Types without positives are listed in `skipped`.
struct StoreGeneration {
  GuidelineStore store;
  std::vector<std::string> skipped;
  std::vector<std::string> notes;
};
StoreGeneration generate_store(const CorpusSplit& split, const Ontology& ontology, GuidelineVariant variant,
                               ChatClient& client, std::uint64_t seed, const GenerationOptions& options = {},
                               std::size_t workers = 0);

GuidelineStore consolidate_store(const GuidelineStore& store, const Ontology& ontology, ChatClient& client,
                                 const GenerationOptions& options = {}, std::size_t workers = 0);

// Curated human guidelines (variant H). A missing file means the dataset has
// none and raises an io error saying so.
GuidelineStore load_human(const std::string& path, const Ontology& ontology);

}  // namespace eeguide

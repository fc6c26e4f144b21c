#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eeguide/jsonl.hpp"
#include "eeguide/ontology.hpp"

namespace eeguide {

// Offsets are Unicode code point offsets into the sentence, end exclusive.
struct ArgumentMention {
  std::string role;
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const ArgumentMention&) const = default;
};

struct GoldEvent {
  std::string event_type;
  std::string trigger_text;
  std::size_t trigger_start = 0;
  std::size_t trigger_end = 0;
  std::vector<ArgumentMention> arguments;

  bool operator==(const GoldEvent&) const = default;
};

struct SentenceInstance {
  std::string doc_id;
  std::string wnd_id;
  std::string instance_id;
  std::string text;
  std::vector<GoldEvent> events;

  bool has_type(std::string_view event_type) const;
  // Distinct gold event types in first-appearance order.
  std::vector<std::string> gold_types() const;
  bool operator==(const SentenceInstance&) const = default;
};

struct CorpusSplit {
  std::string name;
  std::vector<SentenceInstance> instances;

  const SentenceInstance* find(std::string_view instance_id) const;
  bool operator==(const CorpusSplit&) const = default;
};

struct IngestOptions {
  bool strict = true;
  std::string split_name = "train";
  std::size_t workers = 0;  // 0 = hardware concurrency
};

struct IngestResult {
  CorpusSplit split;
  std::size_t skipped = 0;
  std::vector<std::string> problems;  // one per skipped record (lenient mode)
};

/// Reads TextEE-style JSON lines and validates every record against the
/// ontology.
///
/// Records carrying a `tokens` array are token-indexed: their mention
/// offsets are token indices and get converted to character offsets by
/// aligning the tokens against `text` (or against the space-joined tokens
/// when `text` is absent). Event type labels such as "Justice:Arrest-Jail"
/// resolve to the ontology class "ArrestJail" and role labels match
/// case-insensitively, so raw TextEE files ingest directly.
///
/// Strict mode throws on the first invalid record naming its instance_id;
/// lenient mode skips it and records the problem.
IngestResult ingest(const std::string& path, const Ontology& ontology, const IngestOptions& options = {});
IngestResult ingest_records(const std::vector<Json>& records, const Ontology& ontology,
                            const IngestOptions& options = {});

Json to_json(const SentenceInstance& instance);
void write_split(const CorpusSplit& split, const std::string& path);

// Distinct roles filled across the instance's events of `event_type`.
std::size_t role_coverage(const SentenceInstance& instance, std::string_view event_type);
// Distinct (event type, role) pairs filled across all events.
std::size_t role_coverage(const SentenceInstance& instance);

// Development subset: two argument-rich positives per event type present,
// the rest seeded-random no-event instances. Output keeps split order.
CorpusSplit select_dev(const CorpusSplit& split, const Ontology& ontology, std::size_t n, std::uint64_t seed);

// Seeded uniform sample without replacement, split order preserved.
CorpusSplit subset_uniform(const CorpusSplit& split, std::size_t n, std::uint64_t seed);

// Low-data subset: at least one instance per event type present, remaining
// slots weighted toward argument-rich instances. Distinct seeds give
// distinct subsets. Output keeps split order.
CorpusSplit subset_covered(const CorpusSplit& split, const Ontology& ontology, std::size_t n, std::uint64_t seed);

struct SplitStats {
  std::size_t instances = 0;
  std::size_t event_mentions = 0;
  std::size_t no_event_instances = 0;
  std::size_t argument_mentions = 0;
  // Sorted by descending count, ties by type name.
  std::vector<std::pair<std::string, std::size_t>> type_frequency;
  std::map<std::string, std::size_t> role_fills;

  std::size_t frequency_of(std::string_view event_type) const;
};

SplitStats stats(const CorpusSplit& split);
Json to_json(const SplitStats& s);
SplitStats stats_from_json(const Json& j);

}  // namespace eeguide

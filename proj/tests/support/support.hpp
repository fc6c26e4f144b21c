#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "eeguide/corpus.hpp"
#include "eeguide/error_taxonomy.hpp"
#include "eeguide/llmgate.hpp"
#include "eeguide/ontology.hpp"
#include "eeguide/output_parser.hpp"
#include "eeguide/rng.hpp"

namespace eeguide::testing {

std::string fixture(const std::string& name);
Ontology ace05_ontology();
SentenceInstance extradite_instance();

// Removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::vector<std::string> read_lines(const std::string& path);

// ---- synthetic data -----------------------------------------------------

// `types` event types under `parents` super-types, 0..max_roles roles each.
Ontology synthetic_ontology(Rng& rng, std::size_t types, std::size_t parents, std::size_t max_roles);

struct InstanceShape {
  std::size_t max_events = 4;
  std::size_t max_args = 6;  // per event
  double no_event_rate = 0.2;
  bool tricky_text = true;  // quotes, backslashes, newlines, non-ASCII
};

SentenceInstance synthetic_instance(Rng& rng, const Ontology& ontology, const std::string& id,
                                    const InstanceShape& shape = {});
CorpusSplit synthetic_corpus(const Ontology& ontology, std::size_t n, std::uint64_t seed,
                             const InstanceShape& shape = {});

// Predicted events equal to the gold events of the instance.
std::vector<PredictedEvent> gold_as_predictions(const SentenceInstance& inst, const Ontology& ontology);

// Gold-derived predictions with random damage: dropped, duplicated and
// retyped events, altered or padded spans, swapped roles, spurious events.
std::vector<PredictedEvent> perturbed_predictions(Rng& rng, const SentenceInstance& inst, const Ontology& ontology);

// ---- brute-force matching oracle ---------------------------------------

// Largest one-to-one matching between equal items, found by exhaustive
// search over every assignment (memoized on the consumed-gold set).
std::size_t exhaustive_matches(const std::vector<std::string>& predicted, const std::vector<std::string>& gold);

struct OracleCounts {
  std::size_t predicted[4] = {0, 0, 0, 0};
  std::size_t gold[4] = {0, 0, 0, 0};
  std::size_t matched[4] = {0, 0, 0, 0};
};

// TI/TC/AI/AC counts for one instance computed from first principles.
OracleCounts oracle_counts(const std::vector<PredictedEvent>& predicted, const SentenceInstance& gold);

// ---- planted error fixture --------------------------------------------------

// Ten ACE05 instances: three clean, one PE, two TTE, two AE, two MAE.
struct PlantedErrors {
  CorpusSplit split;
  std::vector<PredictionRecord> records;
  std::map<std::string, std::set<ErrorCategory>> expected;
};
PlantedErrors planted_errors(const Ontology& ace05);

// ---- chat stubs -----------------------------------------------------------

// Replies from a queue (the last reply repeats) and records every request.
class ScriptedClient : public ChatClient {
 public:
  explicit ScriptedClient(std::vector<std::string> replies) : replies_(replies.begin(), replies.end()) {}

  ChatResponse complete(const ChatRequest& request) override;
  std::string model_name() const override { return "stub-model"; }

  std::vector<ChatRequest> requests() const;

 private:
  mutable std::mutex mu_;
  std::deque<std::string> replies_;
  std::vector<ChatRequest> requests_;
};

// Generation answer with `n` definitions for the event and every role.
std::string generation_answer(const EventTypeDef& type, std::size_t n, bool fenced = true,
                              const std::string& prose = "");
// Consolidation answer with one definition per item, including mention.
std::string consolidation_answer(const EventTypeDef& type);

}  // namespace eeguide::testing

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "eeguide/corpus.hpp"
#include "eeguide/jsonl.hpp"
#include "eeguide/ontology.hpp"
#include "eeguide/output_parser.hpp"

namespace eeguide {

enum class Metric { kTI, kTC, kAI, kAC };
inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::kTI, Metric::kTC, Metric::kAI, Metric::kAC};
std::string_view to_string(Metric m);

struct MetricCounts {
  std::size_t predicted = 0;
  std::size_t gold = 0;
  std::size_t matched = 0;

  // A zero denominator yields 0, or 1 when both counts are zero.
  double precision() const;
  double recall() const;
  double f1() const;

  MetricCounts& operator+=(const MetricCounts& o);
  bool operator==(const MetricCounts&) const = default;
};

struct ScoreBlock {
  std::array<MetricCounts, 4> metrics;

  MetricCounts& operator[](Metric m) { return metrics[static_cast<std::size_t>(m)]; }
  const MetricCounts& operator[](Metric m) const { return metrics[static_cast<std::size_t>(m)]; }
  ScoreBlock& operator+=(const ScoreBlock& o);
  bool operator==(const ScoreBlock&) const = default;
};

// Error-category counts carried alongside the metrics when records are known.
struct ErrorCounts {
  std::size_t pe = 0;
  std::size_t mae = 0;
  std::size_t ae = 0;
  std::size_t tte = 0;
  std::size_t unclassified = 0;

  bool operator==(const ErrorCounts&) const = default;
};

struct ScoreReport {
  std::string ontology;
  ScoreBlock overall;
  // Every ontology type; each entry scores predictions and gold restricted to
  // that type.
  std::map<std::string, ScoreBlock> per_type;
  ErrorCounts errors;

  Json to_json() const;
  static ScoreReport from_json(const Json& j);
  // Header line plus one line of the four F1 values.
  std::string f1_tsv() const;
};

/// Micro-averaged TI/TC/AI/AC over the gold split.
///
/// Items compared per instance, strings whitespace-normalized:
///   TI  mention
///   TC  (event type, mention)
///   AI  (event type, argument string)
///   AC  (event type, role, argument string)
/// Each gold item is consumed at most once, so matched = sum over distinct
/// items of min(predicted count, gold count). Throws for predicted
/// instance ids absent from gold.
ScoreReport score(const AggregatedPredictions& predictions, const CorpusSplit& gold, const Ontology& ontology);

// Per-instance block, used by the error taxonomy and by tests.
ScoreBlock score_instance(std::span<const PredictedEvent> predicted, const SentenceInstance& gold,
                          std::string_view only_type = {});

}  // namespace eeguide

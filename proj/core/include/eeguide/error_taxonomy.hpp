#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eeguide/corpus.hpp"
#include "eeguide/jsonl.hpp"
#include "eeguide/output_parser.hpp"
#include "eeguide/scoring.hpp"

namespace eeguide {

// PE, MAE, AE and TTE are assigned automatically. CA and LN need human
// judgment and only enter through a manual annotation side-file.
enum class ErrorCategory { kPE, kMAE, kAE, kTTE, kUnclassified, kCA, kLN };

std::string_view to_string(ErrorCategory c);
ErrorCategory error_category_from_string(std::string_view s);

struct InstanceErrors {
  std::string instance_id;
  std::set<ErrorCategory> labels;
  bool manual = false;
};

struct ErrorReport {
  // Instances carrying each label.
  std::map<ErrorCategory, std::size_t> counts;
  // Instances relabeled through the side-file, reported apart from counts.
  std::map<ErrorCategory, std::size_t> manual_counts;
  // Only instances with at least one label, gold order.
  std::vector<InstanceErrors> instances;

  std::size_t count(ErrorCategory c) const;
  const InstanceErrors* find(std::string_view instance_id) const;
  ErrorCounts summary() const;
  Json to_json() const;
};

// instance_id -> manual category (CA or LN).
using ManualLabels = std::map<std::string, ErrorCategory>;
ManualLabels load_manual_labels(const std::string& path);

/// Labels each gold instance:
///   PE   a parse_error or validation_error record touches the instance
///   TTE  a predicted event unmatched at (type, mention) level; a gold event
///        it shares a type or mention with is absorbed rather than also
///        counted as missing
///   AE   a (type, mention)-matched event carries an argument with the wrong
///        role or span, or a spurious argument
///   MAE  a gold event or gold argument with no prediction
/// Instances whose scores are imperfect but match no rule are unclassified.
ErrorReport categorize_errors(const AggregatedPredictions& predictions, const CorpusSplit& gold,
                              std::span<const PredictionRecord> records, const ManualLabels* manual = nullptr);

}  // namespace eeguide

#include "eeguide/error_taxonomy.hpp"

#include <algorithm>
#include <optional>

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

std::string_view to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kPE: return "PE";
    case ErrorCategory::kMAE: return "MAE";
    case ErrorCategory::kAE: return "AE";
    case ErrorCategory::kTTE: return "TTE";
    case ErrorCategory::kUnclassified: return "unclassified";
    case ErrorCategory::kCA: return "CA";
    case ErrorCategory::kLN: return "LN";
  }
  return "unclassified";
}

ErrorCategory error_category_from_string(std::string_view s) {
  for (auto c : {ErrorCategory::kPE, ErrorCategory::kMAE, ErrorCategory::kAE, ErrorCategory::kTTE,
                 ErrorCategory::kUnclassified, ErrorCategory::kCA, ErrorCategory::kLN}) {
    if (to_string(c) == s) return c;
  }
  fail(ErrorKind::kValidation, fmt::format("unknown error category '{}'", s));
}

std::size_t ErrorReport::count(ErrorCategory c) const {
  auto it = counts.find(c);
  return it == counts.end() ? 0 : it->second;
}

const InstanceErrors* ErrorReport::find(std::string_view instance_id) const {
  for (const auto& e : instances) {
    if (e.instance_id == instance_id) return &e;
  }
  return nullptr;
}

ErrorCounts ErrorReport::summary() const {
  return {count(ErrorCategory::kPE), count(ErrorCategory::kMAE), count(ErrorCategory::kAE),
          count(ErrorCategory::kTTE), count(ErrorCategory::kUnclassified)};
}

Json ErrorReport::to_json() const {
  Json c = Json::object();
  for (auto cat : {ErrorCategory::kPE, ErrorCategory::kMAE, ErrorCategory::kAE, ErrorCategory::kTTE,
                   ErrorCategory::kUnclassified}) {
    c[std::string(to_string(cat))] = count(cat);
  }
  Json m = Json::object();
  for (auto cat : {ErrorCategory::kCA, ErrorCategory::kLN}) {
    auto it = manual_counts.find(cat);
    m[std::string(to_string(cat))] = it == manual_counts.end() ? 0 : it->second;
  }
  Json rows = Json::array();
  for (const auto& e : instances) {
    Json labels = Json::array();
    for (auto l : e.labels) labels.push_back(to_string(l));
    rows.push_back({{"instance_id", e.instance_id}, {"labels", labels}, {"manual", e.manual}});
  }
  return {{"counts", c}, {"manual_counts", m}, {"instances", rows}};
}

ManualLabels load_manual_labels(const std::string& path) {
  Json j = read_json_file(path);
  if (!j.is_object()) fail(ErrorKind::kValidation, fmt::format("{}: manual labels must be an object", path));
  ManualLabels out;
  for (const auto& [id, label] : j.items()) {
    if (!label.is_string()) fail(ErrorKind::kValidation, fmt::format("{}: label of '{}' must be a string", path, id));
    auto cat = error_category_from_string(label.get<std::string>());
    if (cat != ErrorCategory::kCA && cat != ErrorCategory::kLN) {
      fail(ErrorKind::kValidation, fmt::format("{}: manual label of '{}' must be CA or LN", path, id));
    }
    out.emplace(id, cat);
  }
  return out;
}

namespace {

struct FlatEvent {
  std::string type;
  std::string mention;
  std::vector<std::pair<std::string, std::string>> args;  // (role, normalized text)
};

FlatEvent flatten(const PredictedEvent& ev) {
  FlatEvent f{ev.event_type, normalize_ws(ev.mention), {}};
  for (const auto& [role, values] : ev.arguments) {
    for (const auto& v : values) f.args.emplace_back(role, normalize_ws(v));
  }
  return f;
}

FlatEvent flatten(const GoldEvent& ev) {
  FlatEvent f{ev.event_type, normalize_ws(ev.trigger_text), {}};
  for (const auto& a : ev.arguments) f.args.emplace_back(a.role, normalize_ws(a.text));
  return f;
}

// Argument-level comparison of a (type, mention)-matched pair.
void compare_arguments(const FlatEvent& pred, const FlatEvent& gold, std::set<ErrorCategory>& labels) {
  auto extra = pred.args;
  auto missing = gold.args;
  for (auto it = extra.begin(); it != extra.end();) {
    auto m = std::find(missing.begin(), missing.end(), *it);
    if (m != missing.end()) {
      missing.erase(m);
      it = extra.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& e : extra) {
    // Same role with another span, or same span under another role.
    auto m = std::find_if(missing.begin(), missing.end(),
                          [&](const auto& g) { return g.first == e.first || g.second == e.second; });
    if (m != missing.end()) missing.erase(m);
    labels.insert(ErrorCategory::kAE);
  }
  if (!missing.empty()) labels.insert(ErrorCategory::kMAE);
}

std::set<ErrorCategory> classify(std::span<const PredictedEvent> predicted, const SentenceInstance& gold) {
  std::set<ErrorCategory> labels;
  std::vector<FlatEvent> preds;
  for (const auto& ev : predicted) preds.push_back(flatten(ev));
  std::vector<FlatEvent> golds;
  for (const auto& ev : gold.events) golds.push_back(flatten(ev));

  std::vector<bool> pred_used(preds.size(), false);
  std::vector<bool> gold_used(golds.size(), false);
  for (std::size_t g = 0; g < golds.size(); ++g) {
    for (std::size_t p = 0; p < preds.size(); ++p) {
      if (pred_used[p] || preds[p].type != golds[g].type || preds[p].mention != golds[g].mention) continue;
      pred_used[p] = gold_used[g] = true;
      compare_arguments(preds[p], golds[g], labels);
      break;
    }
  }
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (pred_used[p]) continue;
    labels.insert(ErrorCategory::kTTE);
    for (std::size_t g = 0; g < golds.size(); ++g) {
      if (gold_used[g]) continue;
      if (preds[p].mention == golds[g].mention || preds[p].type == golds[g].type) {
        gold_used[g] = true;
        break;
      }
    }
  }
  if (std::find(gold_used.begin(), gold_used.end(), false) != gold_used.end()) labels.insert(ErrorCategory::kMAE);
  return labels;
}

bool perfect(const ScoreBlock& b) {
  return std::all_of(b.metrics.begin(), b.metrics.end(),
                     [](const MetricCounts& c) { return c.matched == c.predicted && c.matched == c.gold; });
}

}  // namespace

ErrorReport categorize_errors(const AggregatedPredictions& predictions, const CorpusSplit& gold,
                              std::span<const PredictionRecord> records, const ManualLabels* manual) {
  std::set<std::string_view> gold_ids;
  for (const auto& inst : gold.instances) gold_ids.insert(inst.instance_id);
  for (const auto& [id, events] : predictions) {
    if (!gold_ids.contains(id)) fail(ErrorKind::kValidation, fmt::format("prediction for unknown instance_id '{}'", id));
  }
  std::set<std::string_view> parse_failed;
  for (const auto& r : records) {
    if (r.status != ParseStatus::kOk) parse_failed.insert(r.instance_id);
  }

  ErrorReport report;
  static const std::vector<PredictedEvent> kNone;
  for (const auto& inst : gold.instances) {
    auto it = predictions.find(inst.instance_id);
    const auto& events = it == predictions.end() ? kNone : it->second;
    InstanceErrors row{inst.instance_id, classify(events, inst), false};
    if (parse_failed.contains(inst.instance_id)) row.labels.insert(ErrorCategory::kPE);
    if (row.labels.empty() && !perfect(score_instance(events, inst))) row.labels.insert(ErrorCategory::kUnclassified);

    if (manual != nullptr) {
      if (auto m = manual->find(inst.instance_id); m != manual->end()) {
        row.labels = {m->second};
        row.manual = true;
        ++report.manual_counts[m->second];
        report.instances.push_back(std::move(row));
        continue;
      }
    }
    if (row.labels.empty()) continue;
    for (auto l : row.labels) ++report.counts[l];
    report.instances.push_back(std::move(row));
  }
  return report;
}

}  // namespace eeguide

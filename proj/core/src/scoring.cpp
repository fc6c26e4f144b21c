#include "eeguide/scoring.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kTI: return "TI";
    case Metric::kTC: return "TC";
    case Metric::kAI: return "AI";
    case Metric::kAC: return "AC";
  }
  return "?";
}

double MetricCounts::precision() const {
  if (predicted == 0) return gold == 0 ? 1.0 : 0.0;
  return static_cast<double>(matched) / static_cast<double>(predicted);
}

double MetricCounts::recall() const {
  if (gold == 0) return predicted == 0 ? 1.0 : 0.0;
  return static_cast<double>(matched) / static_cast<double>(gold);
}

double MetricCounts::f1() const {
  double p = precision();
  double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

MetricCounts& MetricCounts::operator+=(const MetricCounts& o) {
  predicted += o.predicted;
  gold += o.gold;
  matched += o.matched;
  return *this;
}

ScoreBlock& ScoreBlock::operator+=(const ScoreBlock& o) {
  for (std::size_t i = 0; i < metrics.size(); ++i) metrics[i] += o.metrics[i];
  return *this;
}

namespace {

using Item = std::tuple<std::string, std::string, std::string>;

// Matched count between two multisets of items.
MetricCounts match(std::vector<Item> pred, std::vector<Item> gold) {
  MetricCounts c;
  c.predicted = pred.size();
  c.gold = gold.size();
  std::sort(pred.begin(), pred.end());
  std::sort(gold.begin(), gold.end());
  auto p = pred.begin();
  auto g = gold.begin();
  while (p != pred.end() && g != gold.end()) {
    if (*p < *g) {
      ++p;
    } else if (*g < *p) {
      ++g;
    } else {
      ++c.matched;
      ++p;
      ++g;
    }
  }
  return c;
}

}  // namespace

ScoreBlock score_instance(std::span<const PredictedEvent> predicted, const SentenceInstance& gold,
                          std::string_view only_type) {
  std::array<std::vector<Item>, 4> pred_items;
  std::array<std::vector<Item>, 4> gold_items;
  auto add = [](std::array<std::vector<Item>, 4>& items, const std::string& type, const std::string& mention) {
    items[0].emplace_back(normalize_ws(mention), "", "");
    items[1].emplace_back(type, normalize_ws(mention), "");
  };
  auto add_arg = [](std::array<std::vector<Item>, 4>& items, const std::string& type, const std::string& role,
                    const std::string& text) {
    std::string norm = normalize_ws(text);
    items[2].emplace_back(type, norm, "");
    items[3].emplace_back(type, role, std::move(norm));
  };
  for (const auto& ev : predicted) {
    if (!only_type.empty() && ev.event_type != only_type) continue;
    add(pred_items, ev.event_type, ev.mention);
    for (const auto& [role, values] : ev.arguments) {
      for (const auto& v : values) add_arg(pred_items, ev.event_type, role, v);
    }
  }
  for (const auto& ev : gold.events) {
    if (!only_type.empty() && ev.event_type != only_type) continue;
    add(gold_items, ev.event_type, ev.trigger_text);
    for (const auto& a : ev.arguments) add_arg(gold_items, ev.event_type, a.role, a.text);
  }
  ScoreBlock block;
  for (std::size_t m = 0; m < 4; ++m) block.metrics[m] = match(std::move(pred_items[m]), std::move(gold_items[m]));
  return block;
}

ScoreReport score(const AggregatedPredictions& predictions, const CorpusSplit& gold, const Ontology& ontology) {
  std::map<std::string_view, const SentenceInstance*> by_id;
  for (const auto& inst : gold.instances) by_id.emplace(inst.instance_id, &inst);
  for (const auto& [id, events] : predictions) {
    if (!by_id.contains(id)) {
      fail(ErrorKind::kValidation, fmt::format("prediction for unknown instance_id '{}'", id));
    }
  }

  ScoreReport report;
  report.ontology = ontology.name();
  for (const auto& t : ontology.event_types()) report.per_type[t.name];
  static const std::vector<PredictedEvent> kNone;
  for (const auto& inst : gold.instances) {
    auto it = predictions.find(inst.instance_id);
    const auto& events = it == predictions.end() ? kNone : it->second;
    report.overall += score_instance(events, inst);
    std::set<std::string_view> touched;
    for (const auto& ev : events) touched.insert(ev.event_type);
    for (const auto& ev : inst.events) touched.insert(ev.event_type);
    for (auto type : touched) {
      auto slot = report.per_type.find(std::string(type));
      if (slot == report.per_type.end()) continue;
      slot->second += score_instance(events, inst, type);
    }
  }
  return report;
}

namespace {

Json block_json(const ScoreBlock& b) {
  Json j = Json::object();
  for (auto m : kAllMetrics) {
    const auto& c = b[m];
    j[std::string(to_string(m))] = {{"predicted", c.predicted}, {"gold", c.gold},      {"matched", c.matched},
                                    {"precision", c.precision()}, {"recall", c.recall()}, {"f1", c.f1()}};
  }
  return j;
}

ScoreBlock block_from_json(const Json& j) {
  ScoreBlock b;
  for (auto m : kAllMetrics) {
    const auto& c = j.at(std::string(to_string(m)));
    b[m].predicted = c.at("predicted").get<std::size_t>();
    b[m].gold = c.at("gold").get<std::size_t>();
    b[m].matched = c.at("matched").get<std::size_t>();
  }
  return b;
}

}  // namespace

Json ScoreReport::to_json() const {
  Json types = Json::object();
  for (const auto& [name, block] : per_type) types[name] = block_json(block);
  return {{"ontology", ontology},
          {"overall", block_json(overall)},
          {"per_type", types},
          {"errors",
           {{"PE", errors.pe}, {"MAE", errors.mae}, {"AE", errors.ae}, {"TTE", errors.tte},
            {"unclassified", errors.unclassified}}}};
}

ScoreReport ScoreReport::from_json(const Json& j) {
  ScoreReport r;
  try {
    r.ontology = j.at("ontology").get<std::string>();
    r.overall = block_from_json(j.at("overall"));
    for (const auto& [name, block] : j.at("per_type").items()) r.per_type[name] = block_from_json(block);
    if (j.contains("errors")) {
      const auto& e = j["errors"];
      r.errors.pe = e.value("PE", std::size_t{0});
      r.errors.mae = e.value("MAE", std::size_t{0});
      r.errors.ae = e.value("AE", std::size_t{0});
      r.errors.tte = e.value("TTE", std::size_t{0});
      r.errors.unclassified = e.value("unclassified", std::size_t{0});
    }
  } catch (const Json::exception& e) {
    fail(ErrorKind::kValidation, fmt::format("malformed score report: {}", e.what()));
  }
  return r;
}

std::string ScoreReport::f1_tsv() const {
  return fmt::format("TI\tTC\tAI\tAC\n{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\n", overall[Metric::kTI].f1(),
                     overall[Metric::kTC].f1(), overall[Metric::kAI].f1(), overall[Metric::kAC].f1());
}

}  // namespace eeguide

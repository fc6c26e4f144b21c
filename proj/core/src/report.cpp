#include "eeguide/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

std::string percent2(double ratio) { return fmt::format("{:.2f}", ratio * 100.0); }

DeltaTable frequency_delta(const ScoreReport& a, const ScoreReport& b, const SplitStats& train, std::string label_a,
                           std::string label_b) {
  if (a.ontology != b.ontology) {
    fail(ErrorKind::kValidation,
         fmt::format("reports cover different ontologies ('{}' vs '{}')", a.ontology, b.ontology));
  }
  std::set<std::string> types;
  for (const auto& [t, _] : a.per_type) types.insert(t);
  for (const auto& [t, _] : b.per_type) types.insert(t);

  DeltaTable out;
  out.label_a = std::move(label_a);
  out.label_b = std::move(label_b);
  for (const auto& t : types) {
    DeltaRow row;
    row.event_type = t;
    row.train_frequency = train.frequency_of(t);
    if (auto it = a.per_type.find(t); it != a.per_type.end()) row.ac_a = it->second[Metric::kAC].f1();
    if (auto it = b.per_type.find(t); it != b.per_type.end()) row.ac_b = it->second[Metric::kAC].f1();
    out.rows.push_back(std::move(row));
  }
  std::stable_sort(out.rows.begin(), out.rows.end(), [](const DeltaRow& x, const DeltaRow& y) {
    if (x.train_frequency != y.train_frequency) return x.train_frequency > y.train_frequency;
    return x.event_type < y.event_type;
  });

  out.macro.event_type = "macro";
  out.micro.event_type = "micro";
  for (const auto& r : out.rows) {
    out.macro.ac_a += r.ac_a;
    out.macro.ac_b += r.ac_b;
    out.macro.train_frequency += r.train_frequency;
  }
  if (!out.rows.empty()) {
    out.macro.ac_a /= static_cast<double>(out.rows.size());
    out.macro.ac_b /= static_cast<double>(out.rows.size());
  }
  out.micro.train_frequency = out.macro.train_frequency;
  out.micro.ac_a = a.overall[Metric::kAC].f1();
  out.micro.ac_b = b.overall[Metric::kAC].f1();
  return out;
}

namespace {

std::string signed_percent(double ratio) {
  auto s = percent2(ratio);
  return s.starts_with('-') ? s : "+" + s;
}

std::string delta_line(const DeltaRow& r, std::size_t rank, char sep) {
  return fmt::format("{}{}{}{}{}{}{}{}{}{}{}", rank, sep, r.event_type, sep, r.train_frequency, sep,
                     percent2(r.ac_a), sep, percent2(r.ac_b), sep, signed_percent(r.delta()));
}

}  // namespace

std::string DeltaTable::to_tsv() const {
  std::string out = fmt::format("rank\tevent_type\ttrain_frequency\tac_{}\tac_{}\tdelta\n", label_a, label_b);
  for (std::size_t i = 0; i < rows.size(); ++i) out += delta_line(rows[i], i, '\t') + "\n";
  for (const auto* r : {&macro, &micro}) {
    out += fmt::format("-\t{}\t{}\t{}\t{}\t{}\n", r->event_type, r->train_frequency, percent2(r->ac_a),
                       percent2(r->ac_b), signed_percent(r->delta()));
  }
  return out;
}

std::string DeltaTable::to_text() const {
  std::size_t w = std::string_view("event_type").size();
  for (const auto& r : rows) w = std::max(w, r.event_type.size());
  const std::size_t wa = std::max<std::size_t>(8, label_a.size() + 3);
  const std::size_t wb = std::max<std::size_t>(8, label_b.size() + 3);
  std::string out = fmt::format("{:>4}  {:<{}}  {:>9}  {:>{}}  {:>{}}  {:>8}\n", "rank", "event_type", w, "train",
                                "AC " + label_a, wa, "AC " + label_b, wb, "delta");
  auto line = [&](const std::string& rank, const DeltaRow& r) {
    out += fmt::format("{:>4}  {:<{}}  {:>9}  {:>{}}  {:>{}}  {:>8}\n", rank, r.event_type, w, r.train_frequency,
                       percent2(r.ac_a), wa, percent2(r.ac_b), wb, signed_percent(r.delta()));
  };
  for (std::size_t i = 0; i < rows.size(); ++i) line(std::to_string(i), rows[i]);
  line("", macro);
  line("", micro);
  return out;
}

ComparisonTable comparison_table(const std::vector<std::pair<std::string, ScoreReport>>& reports) {
  ComparisonTable t;
  for (const auto& [label, report] : reports) {
    ComparisonRow row;
    row.label = label;
    for (std::size_t m = 0; m < 4; ++m) row.percent[m] = report.overall[kAllMetrics[m]].f1() * 100.0;
    t.rows.push_back(std::move(row));
  }
  for (std::size_t m = 0; m < 4; ++m) {
    std::set<long long, std::greater<>> distinct;
    auto key = [&](const ComparisonRow& r) { return std::llround(r.percent[m] * 100.0); };
    for (const auto& r : t.rows) distinct.insert(key(r));
    auto it = distinct.begin();
    if (it == distinct.end()) continue;
    const long long best = *it;
    const bool has_second = ++it != distinct.end();
    const long long second = has_second ? *it : 0;
    for (auto& r : t.rows) {
      r.best[m] = key(r) == best;
      r.second[m] = has_second && key(r) == second;
    }
  }
  return t;
}

std::string ComparisonTable::to_tsv() const {
  std::string out = "run\tTI\tTC\tAI\tAC\tbest\tsecond\n";
  for (const auto& r : rows) {
    std::string best, second;
    for (std::size_t m = 0; m < 4; ++m) {
      if (r.best[m]) best += (best.empty() ? "" : ",") + std::string(to_string(kAllMetrics[m]));
      if (r.second[m]) second += (second.empty() ? "" : ",") + std::string(to_string(kAllMetrics[m]));
    }
    out += fmt::format("{}\t{:.2f}\t{:.2f}\t{:.2f}\t{:.2f}\t{}\t{}\n", r.label, r.percent[0], r.percent[1],
                       r.percent[2], r.percent[3], best, second);
  }
  return out;
}

std::string ComparisonTable::to_text() const {
  std::size_t w = 3;
  for (const auto& r : rows) w = std::max(w, r.label.size());
  std::string out = fmt::format("{:<{}}", "run", w);
  for (auto m : kAllMetrics) out += fmt::format("  {:>7}", to_string(m));
  out += "\n";
  for (const auto& r : rows) {
    out += fmt::format("{:<{}}", r.label, w);
    for (std::size_t m = 0; m < 4; ++m) {
      const char mark = r.best[m] ? '*' : (r.second[m] ? '+' : ' ');
      out += fmt::format("  {:>6.2f}{}", r.percent[m], mark);
    }
    out += "\n";
  }
  out += "* best, + second best\n";
  return out;
}

PlotTable to_plot_table(const DeltaTable& t) {
  PlotTable p;
  p.columns = {"rank", "event_type", "train_frequency", "ac_" + t.label_a, "ac_" + t.label_b, "delta"};
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    p.rows.push_back({std::to_string(i), r.event_type, std::to_string(r.train_frequency), percent2(r.ac_a),
                      percent2(r.ac_b), percent2(r.delta())});
  }
  return p;
}

PlotTable to_plot_table(const ComparisonTable& t) {
  PlotTable p;
  p.columns = {"run", "TI", "TC", "AI", "AC"};
  for (const auto& r : t.rows) {
    std::vector<std::string> row{r.label};
    for (double v : r.percent) row.push_back(fmt::format("{:.2f}", v));
    p.rows.push_back(std::move(row));
  }
  return p;
}

PlotTable to_plot_table(const ErrorReport& r) {
  PlotTable p;
  p.columns = {"category", "instances", "manual"};
  for (auto c : {ErrorCategory::kPE, ErrorCategory::kMAE, ErrorCategory::kAE, ErrorCategory::kTTE,
                 ErrorCategory::kUnclassified, ErrorCategory::kCA, ErrorCategory::kLN}) {
    auto manual = r.manual_counts.find(c);
    p.rows.push_back({std::string(to_string(c)), std::to_string(r.count(c)),
                      std::to_string(manual == r.manual_counts.end() ? 0 : manual->second)});
  }
  return p;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void emit_plot_data(const PlotTable& table, const std::string& path) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
  write_text_file(path, out);
}

PlotTable read_plot_data(const std::string& path) {
  auto rows = parse_csv(read_text_file(path));
  if (rows.empty()) fail(ErrorKind::kValidation, fmt::format("{}: missing CSV header row", path));
  PlotTable t;
  t.columns = std::move(rows.front());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != t.columns.size()) {
      fail(ErrorKind::kValidation, fmt::format("{}: row {} has {} cells, header has {}", path, i + 1,
                                               rows[i].size(), t.columns.size()));
    }
    t.rows.push_back(std::move(rows[i]));
  }
  return t;
}

}  // namespace eeguide

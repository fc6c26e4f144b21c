#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eeguide/corpus.hpp"
#include "eeguide/error_taxonomy.hpp"
#include "eeguide/scoring.hpp"

namespace eeguide {

struct DeltaRow {
  std::string event_type;
  std::size_t train_frequency = 0;
  double ac_a = 0.0;  // AC F1 in [0, 1]
  double ac_b = 0.0;
  double delta() const { return ac_b - ac_a; }
};

/// Per-type AC of two runs, most frequent training type first (ties by
/// name). `macro` averages the rows; `micro` holds the overall AC F1.
struct DeltaTable {
  std::string label_a;
  std::string label_b;
  std::vector<DeltaRow> rows;
  DeltaRow macro;
  DeltaRow micro;

  std::string to_tsv() const;
  std::string to_text() const;
};

DeltaTable frequency_delta(const ScoreReport& a, const ScoreReport& b, const SplitStats& train,
                           std::string label_a = "a", std::string label_b = "b");

struct ComparisonRow {
  std::string label;
  std::array<double, 4> percent{};  // TI, TC, AI, AC F1 x 100
  std::array<bool, 4> best{};
  std::array<bool, 4> second{};
};

/// One row per run, F1 as percentages. Best and second-best are decided on
/// the values as printed (two decimals), so ties are flagged together.
struct ComparisonTable {
  std::vector<ComparisonRow> rows;

  std::string to_tsv() const;
  // Aligned columns; best marked with '*', second-best with '+'.
  std::string to_text() const;
};

ComparisonTable comparison_table(const std::vector<std::pair<std::string, ScoreReport>>& reports);

// Percentage with two decimals: 0.61958 -> "61.96".
std::string percent2(double ratio);

// Plain table for CSV export; the first row names the columns.
struct PlotTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const PlotTable&) const = default;
};

PlotTable to_plot_table(const DeltaTable& t);
PlotTable to_plot_table(const ComparisonTable& t);
PlotTable to_plot_table(const ErrorReport& r);

void emit_plot_data(const PlotTable& table, const std::string& path);
PlotTable read_plot_data(const std::string& path);

}  // namespace eeguide

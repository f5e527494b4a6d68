#pragma once

#include <string>
#include <vector>

#include "spineout/experiment.hpp"

namespace spineout {

// Rows = model x {Acc, F1}, columns = groups; two decimals, the best value of
// each row marked with a trailing '*'.
std::string table4_csv(const ExperimentMatrix& matrix);
// group, name, mean/SD of Acc and F1 across models.
std::string table5_csv(const ExperimentMatrix& matrix);
std::string table5_text(const ExperimentMatrix& matrix);

struct BarSeries {
  std::string name;
  std::vector<double> values;  // one per category, in [0, 1]
};

// Grouped vertical bar chart with a 0..1 axis ticked every 0.1.
std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& categories,
                          const std::vector<BarSeries>& series);

// Aggregates must match a recomputation from the cells to 1e-12.
void check_aggregates(const ExperimentMatrix& matrix);

// Writes table4.csv, table5.csv, fig2a.svg, fig2b.svg and results.json into
// out_dir (created if needed) and returns their paths.
std::vector<std::string> emit_report(const ExperimentMatrix& matrix, const std::string& out_dir);

// Re-renders only the CSV and SVG files.
std::vector<std::string> render_tables_and_figures(const ExperimentMatrix& matrix, const std::string& out_dir);

}  // namespace spineout

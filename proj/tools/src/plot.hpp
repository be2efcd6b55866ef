#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace orliczlab::cli {

struct PlotSeries {
  std::string title;
  int x_column = 1;
  int y_column = 2;
};

/// Writes <stem>.dat (whitespace-separated, `#` header) and <stem>.plt, a gnuplot
/// script that renders <stem>.png from it.
void write_plot(const std::filesystem::path& dir, const std::string& stem,
                const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                const std::string& xlabel, const std::string& ylabel, const std::vector<PlotSeries>& series,
                bool log_y = false);

}  // namespace orliczlab::cli

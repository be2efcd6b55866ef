#include "plot.hpp"

#include "orliczlab/io.hpp"

namespace orliczlab::cli {

void write_plot(const std::filesystem::path& dir, const std::string& stem,
                const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                const std::string& xlabel, const std::string& ylabel, const std::vector<PlotSeries>& series,
                bool log_y) {
  std::string dat = "#";
  for (const auto& c : columns) dat += " " + c;
  dat += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) dat += (i ? " " : "") + format_double(row[i]);
    dat += "\n";
  }
  write_text(dir / (stem + ".dat"), dat);

  std::string plt = "set terminal pngcairo size 900,600\n";
  plt += "set output '" + stem + ".png'\n";
  plt += "set xlabel '" + xlabel + "'\nset ylabel '" + ylabel + "'\n";
  if (log_y) plt += "set logscale y\n";
  plt += "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    plt += (i ? ", \\\n     " : "") + std::string("'") + stem + ".dat' using " + std::to_string(s.x_column) + ":" +
           std::to_string(s.y_column) + " with lines title '" + s.title + "'";
  }
  plt += "\n";
  write_text(dir / (stem + ".plt"), plt);
}

}  // namespace orliczlab::cli

#pragma once

#include <string>
#include <vector>

namespace rpspec {

struct Series {
  std::string name;
  std::vector<double> x, y;
};

/// gnuplot data: one block per series headed by "# name", blocks separated by
/// two blank lines (addressable with `index`).
std::string gnuplot_dat(const std::vector<Series>& series, const std::string& header = {});

/// Self-contained SVG line plot.
std::string svg_plot(const std::vector<Series>& series, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel, bool log_x = false);

}  // namespace rpspec

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trotter {

struct PlotSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Minimal standalone SVG with log-log axes, one polyline per series.
/// Non-positive points are skipped.
void write_loglog_svg(std::ostream& out, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series);

}  // namespace trotter

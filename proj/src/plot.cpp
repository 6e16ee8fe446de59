#include "trotter/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "trotter/format.hpp"

namespace trotter {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 80;
constexpr double kMarginRight = 150;
constexpr double kMarginTop = 40;
constexpr double kMarginBottom = 60;

constexpr std::array<const char*, 6> kColors = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Snap to whole decades; never empty.
  void finish() {
    if (lo > hi) {
      lo = 0;
      hi = 1;
    }
    lo = std::floor(lo);
    hi = std::ceil(hi);
    if (hi == lo) hi = lo + 1;
  }
};

}  // namespace

void write_loglog_svg(std::ostream& out, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series) {
  Range xr;
  Range yr;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.xs.size(), s.ys.size()); ++i) {
      if (s.xs[i] > 0 && s.ys[i] > 0) {
        xr.add(std::log10(s.xs[i]));
        yr.add(std::log10(s.ys[i]));
      }
    }
  }
  xr.finish();
  yr.finish();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double lx) {
    return kMarginLeft + (lx - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto py = [&](double ly) {
    return kMarginTop + (yr.hi - ly) / (yr.hi - yr.lo) * plot_h;
  };
  const auto num = [](double v) { return format_double(std::round(v * 100) / 100); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << escape(title) << "</text>\n";

  for (double d = xr.lo; d <= xr.hi; d += 1) {
    out << "<line x1=\"" << num(px(d)) << "\" y1=\"" << kMarginTop
        << "\" x2=\"" << num(px(d)) << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << num(px(d)) << "\" y=\"" << kMarginTop + plot_h + 18
        << "\" text-anchor=\"middle\">1e" << static_cast<int>(d)
        << "</text>\n";
  }
  for (double d = yr.lo; d <= yr.hi; d += 1) {
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << num(py(d))
        << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << num(py(d))
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << num(py(d) + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
  }
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
      << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\""
      << kHeight - 16 << "\" text-anchor=\"middle\">" << escape(x_label)
      << "</text>\n";
  out << "<text transform=\"translate(20," << kMarginTop + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label)
      << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % kColors.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.xs.size(), s.ys.size()); ++i) {
      if (s.xs[i] > 0 && s.ys[i] > 0) {
        out << num(px(std::log10(s.xs[i]))) << ','
            << num(py(std::log10(s.ys[i]))) << ' ';
      }
    }
    out << "\"/>\n";
    const double ly = kMarginTop + 16 + 18 * static_cast<double>(k);
    out << "<line x1=\"" << kMarginLeft + plot_w + 12 << "\" y1=\"" << ly
        << "\" x2=\"" << kMarginLeft + plot_w + 36 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kMarginLeft + plot_w + 42 << "\" y=\"" << ly + 4
        << "\">" << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace trotter

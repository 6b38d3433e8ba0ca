#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mgraph {

enum class LineStyle { solid, dashed };

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  LineStyle style = LineStyle::solid;
  std::string color = "#000000";
};

struct PlotOptions {
  std::string title;
  std::string x_label = "p0";
  std::string y_label = "risk";
  int width = 640;
  int height = 420;
};

/// Round tick positions covering [lo, hi], roughly `target` of them, with
/// steps of 1, 2 or 5 times a power of ten.
std::vector<double> nice_ticks(double lo, double hi, int target = 5);

/// Static SVG line chart: axes with ticks, one polyline per series, legend.
void write_line_chart_svg(std::ostream& out, const std::vector<PlotSeries>& series,
                          const PlotOptions& options);

}  // namespace mgraph

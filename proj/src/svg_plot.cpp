#include "mgraph/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace mgraph {

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string tick_label(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << (std::abs(v) < 1e-12 ? 0.0 : v);
  return os.str();
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) hi = lo + 1.0;
  const double raw = (hi - lo) / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  const long first = static_cast<long>(std::floor(lo / step + 1e-9));
  const long last = static_cast<long>(std::ceil(hi / step - 1e-9));
  for (long k = first; k <= last; ++k) ticks.push_back(static_cast<double>(k) * step);
  return ticks;
}

void write_line_chart_svg(std::ostream& out, const std::vector<PlotSeries>& series,
                          const PlotOptions& options) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = 0.0, y_hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    for (double v : s.x) x_lo = std::min(x_lo, v), x_hi = std::max(x_hi, v);
    for (double v : s.y) y_lo = std::min(y_lo, v), y_hi = std::max(y_hi, v);
  }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0;
  if (!std::isfinite(y_hi) || y_hi <= y_lo) y_hi = y_lo + 1.0;
  const auto x_ticks = nice_ticks(x_lo, x_hi, 10);
  const auto y_ticks = nice_ticks(y_lo, y_hi, 6);
  x_lo = x_ticks.front(), x_hi = x_ticks.back();
  y_lo = y_ticks.front(), y_hi = y_ticks.back();

  const double left = 70, right = 20, top = 40, bottom = 55;
  const double w = options.width, h = options.height;
  const double plot_w = w - left - right, plot_h = h - top - bottom;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h; };

  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << escape(options.title) << "</text>\n";

  out << "<g stroke=\"#000\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
      << "\"/>\n";
  for (double t : x_ticks)
    out << "<line x1=\"" << px(t) << "\" y1=\"" << top + plot_h << "\" x2=\"" << px(t) << "\" y2=\""
        << top + plot_h + 5 << "\"/>\n";
  for (double t : y_ticks)
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
        << "\"/>\n";
  out << "</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : x_ticks)
    out << "<text x=\"" << px(t) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  for (double t : y_ticks)
    out << "<text x=\"" << left - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">" << tick_label(t)
        << "</text>\n";
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">"
      << escape(options.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + plot_h / 2 << ")\">" << escape(options.y_label) << "</text>\n";
  out << "</g>\n";

  double legend_y = top + 12;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\"";
    if (s.style == LineStyle::dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    const std::size_t count = std::min(s.x.size(), s.y.size());
    for (std::size_t k = 0; k < count; ++k) out << (k ? " " : "") << px(s.x[k]) << ',' << py(s.y[k]);
    out << "\"/>\n";

    const double lx = left + plot_w - 150;
    out << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 30 << "\" y2=\"" << legend_y
        << "\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\""
        << (s.style == LineStyle::dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    out << "<text x=\"" << lx + 36 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.label) << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
}

}  // namespace mgraph

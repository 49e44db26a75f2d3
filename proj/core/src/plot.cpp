#include "lgp/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lgp {

namespace {

// Canvas geometry; the legend lives in the right margin.
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 820.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 550.0;
constexpr int kTicks = 5;

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

std::string coord(double value) { return fmt("%.2f", value); }
std::string tick_label(double value) { return fmt("%.6g", value); }

struct Series {
  const char* label;
  const char* color;
  double GenerationStats::* field;
};

constexpr Series kSeries[] = {
    {"max", "#d62728", &GenerationStats::max},
    {"mean", "#1f77b4", &GenerationStats::mean},
    {"median", "#2ca02c", &GenerationStats::median},
    {"min", "#9467bd", &GenerationStats::min},
};

}  // namespace

std::string render_stats_svg(const std::vector<GenerationStats>& series) {
  if (series.empty()) {
    throw std::invalid_argument("render_stats_svg: empty statistics series");
  }

  double x_min = series.front().generation;
  double x_max = series.back().generation;
  double y_min = series.front().min;
  double y_max = series.front().max;
  for (const GenerationStats& row : series) {
    x_min = std::min(x_min, static_cast<double>(row.generation));
    x_max = std::max(x_max, static_cast<double>(row.generation));
    for (const Series& s : kSeries) {
      y_min = std::min(y_min, row.*(s.field));
      y_max = std::max(y_max, row.*(s.field));
    }
  }
  // Degenerate spans still need a nonzero domain to map into.
  const double x_span = x_max > x_min ? x_max - x_min : 1.0;
  if (y_max <= y_min) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;
  const double y_span = y_max - y_min;

  auto x_at = [&](double g) {
    return kLeft + (g - x_min) / x_span * (kRight - kLeft);
  };
  auto y_at = [&](double v) {
    return kBottom - (v - y_min) / y_span * (kBottom - kTop);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" "
         "height=\"600\" viewBox=\"0 0 960 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"600\" "
         "fill=\"#ffffff\"/>\n";

  // Gridlines with tick labels on both axes.
  svg += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double gx = x_min + x_span * i / kTicks;
    const double gy = y_min + y_span * i / kTicks;
    svg += "<line x1=\"" + coord(x_at(gx)) + "\" y1=\"" + coord(kTop) +
           "\" x2=\"" + coord(x_at(gx)) + "\" y2=\"" + coord(kBottom) +
           "\"/>\n";
    svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(y_at(gy)) +
           "\" x2=\"" + coord(kRight) + "\" y2=\"" + coord(y_at(gy)) +
           "\"/>\n";
  }
  svg += "</g>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double gx = x_min + x_span * i / kTicks;
    const double gy = y_min + y_span * i / kTicks;
    svg += "<text x=\"" + coord(x_at(gx)) + "\" y=\"" + coord(kBottom + 18) +
           "\" text-anchor=\"middle\">" + tick_label(gx) + "</text>\n";
    svg += "<text x=\"" + coord(kLeft - 8) + "\" y=\"" +
           coord(y_at(gy) + 4) + "\" text-anchor=\"end\">" + tick_label(gy) +
           "</text>\n";
  }
  svg += "</g>\n";

  // Plot frame.
  svg += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) +
         "\" width=\"" + coord(kRight - kLeft) + "\" height=\"" +
         coord(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (const Series& s : kSeries) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += s.color;
    svg += "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const GenerationStats& row : series) {
      if (!first) svg += ' ';
      first = false;
      svg += coord(x_at(row.generation)) + "," + coord(y_at(row.*(s.field)));
    }
    svg += "\"/>\n";
  }

  // Legend in the right margin.
  double legend_y = kTop + 10.0;
  svg += "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#333333\">\n";
  for (const Series& s : kSeries) {
    svg += "<line x1=\"" + coord(kRight + 16) + "\" y1=\"" + coord(legend_y) +
           "\" x2=\"" + coord(kRight + 44) + "\" y2=\"" + coord(legend_y) +
           "\" stroke=\"";
    svg += s.color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + coord(kRight + 50) + "\" y=\"" +
           coord(legend_y + 4) + "\">";
    svg += s.label;
    svg += "</text>\n";
    legend_y += 22.0;
  }
  svg += "</g>\n";

  // Axis labels.
  svg += "<text x=\"" + coord((kLeft + kRight) / 2) + "\" y=\"" +
         coord(kHeight - 10) +
         "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#333333\" "
         "text-anchor=\"middle\">generation</text>\n";
  svg += "<text x=\"18\" y=\"" + coord((kTop + kBottom) / 2) +
         "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#333333\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         coord((kTop + kBottom) / 2) + ")\">fitness</text>\n";

  svg += "</svg>\n";
  return svg;
}

void write_stats_svg(const std::vector<GenerationStats>& series,
                     const std::filesystem::path& path) {
  const std::string svg = render_stats_svg(series);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << svg;
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace lgp

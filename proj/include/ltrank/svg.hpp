#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltrank/format.hpp"

namespace ltrank {

// Fixed series palette, indexed by measure id.
inline constexpr const char* kSeriesColors[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2"};

struct CurveSeries {
  std::string name;
  int color_id = 0;
  std::vector<double> x;     // fractions
  std::vector<double> y;     // normalized activation
  std::vector<double> band;  // +-1 std; empty means no band
};

namespace svgdetail {

struct Frame {
  double width = 640, height = 420;
  double left = 64, right = 150, top = 36, bottom = 48;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

  double px(double x) const {
    return left + (x - x_min) / (x_max - x_min) * (width - left - right);
  }
  double py(double y) const {
    return height - bottom -
           (y - y_min) / (y_max - y_min) * (height - top - bottom);
  }
};

inline void open_svg(std::string& s, const Frame& f, const std::string& title) {
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       format_coord(f.width) + "\" height=\"" + format_coord(f.height) +
       "\" viewBox=\"0 0 " + format_coord(f.width) + " " +
       format_coord(f.height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + format_coord(f.width / 2) +
       "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">" + title + "</text>\n";
}

inline void axes(std::string& s, const Frame& f, const std::string& x_label,
                 const std::string& y_label, std::span<const double> x_ticks,
                 std::span<const double> y_ticks) {
  const std::string ax = "stroke=\"black\" stroke-width=\"1\"";
  s += "<line x1=\"" + format_coord(f.px(f.x_min)) + "\" y1=\"" +
       format_coord(f.py(f.y_min)) + "\" x2=\"" + format_coord(f.px(f.x_max)) +
       "\" y2=\"" + format_coord(f.py(f.y_min)) + "\" " + ax + "/>\n";
  s += "<line x1=\"" + format_coord(f.px(f.x_min)) + "\" y1=\"" +
       format_coord(f.py(f.y_min)) + "\" x2=\"" + format_coord(f.px(f.x_min)) +
       "\" y2=\"" + format_coord(f.py(f.y_max)) + "\" " + ax + "/>\n";
  for (double t : x_ticks) {
    s += "<line x1=\"" + format_coord(f.px(t)) + "\" y1=\"" +
         format_coord(f.py(f.y_min)) + "\" x2=\"" + format_coord(f.px(t)) +
         "\" y2=\"" + format_coord(f.py(f.y_min) + 4) + "\" " + ax + "/>\n";
    s += "<text x=\"" + format_coord(f.px(t)) + "\" y=\"" +
         format_coord(f.py(f.y_min) + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">" + format_double(t) + "</text>\n";
  }
  for (double t : y_ticks) {
    s += "<line x1=\"" + format_coord(f.px(f.x_min) - 4) + "\" y1=\"" +
         format_coord(f.py(t)) + "\" x2=\"" + format_coord(f.px(f.x_min)) +
         "\" y2=\"" + format_coord(f.py(t)) + "\" " + ax + "/>\n";
    s += "<text x=\"" + format_coord(f.px(f.x_min) - 8) + "\" y=\"" +
         format_coord(f.py(t) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         format_double(t) + "</text>\n";
  }
  s += "<text x=\"" + format_coord((f.px(f.x_min) + f.px(f.x_max)) / 2) +
       "\" y=\"" + format_coord(f.height - 8) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
       x_label + "</text>\n";
  s += "<text x=\"14\" y=\"" +
       format_coord((f.py(f.y_min) + f.py(f.y_max)) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
       "transform=\"rotate(-90 14 " +
       format_coord((f.py(f.y_min) + f.py(f.y_max)) / 2) + ")\">" + y_label +
       "</text>\n";
}

}  // namespace svgdetail

/// Activation-vs-fraction line chart, one polyline per series, optional +-1
/// std band, fixed axes [0, x_max] x [0, 1].
inline std::string render_curves_svg(const std::string& title,
                                     std::span<const CurveSeries> series,
                                     double x_max) {
  if (series.empty()) throw std::invalid_argument("render_curves_svg: no series");
  for (const auto& sr : series)
    if (sr.x.empty() || sr.x.size() != sr.y.size() ||
        (!sr.band.empty() && sr.band.size() != sr.x.size()))
      throw std::invalid_argument("render_curves_svg: malformed series");

  svgdetail::Frame f;
  f.x_max = x_max;
  std::string s;
  svgdetail::open_svg(s, f, title);

  for (const auto& sr : series) {
    if (sr.band.empty()) continue;
    std::string pts;
    for (std::size_t i = 0; i < sr.x.size(); ++i)
      pts += format_coord(f.px(sr.x[i])) + "," +
             format_coord(f.py(std::min(1.0, sr.y[i] + sr.band[i]))) + " ";
    for (std::size_t i = sr.x.size(); i-- > 0;)
      pts += format_coord(f.px(sr.x[i])) + "," +
             format_coord(f.py(std::max(0.0, sr.y[i] - sr.band[i]))) + " ";
    s += "<polygon points=\"" + pts + "\" fill=\"" +
         kSeriesColors[sr.color_id % 7] + "\" fill-opacity=\"0.15\" "
         "stroke=\"none\" class=\"band\"/>\n";
  }
  for (const auto& sr : series) {
    std::string pts;
    for (std::size_t i = 0; i < sr.x.size(); ++i)
      pts += format_coord(f.px(sr.x[i])) + "," + format_coord(f.py(sr.y[i])) + " ";
    s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
         kSeriesColors[sr.color_id % 7] + "\" stroke-width=\"1.5\"/>\n";
  }
  // Legend, fixed order as given.
  double ly = f.top + 6;
  for (const auto& sr : series) {
    const double lx = f.width - f.right + 12;
    s += "<line x1=\"" + format_coord(lx) + "\" y1=\"" + format_coord(ly) +
         "\" x2=\"" + format_coord(lx + 18) + "\" y2=\"" + format_coord(ly) +
         "\" stroke=\"" + kSeriesColors[sr.color_id % 7] +
         "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + format_coord(lx + 24) + "\" y=\"" +
         format_coord(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + sr.name +
         "</text>\n";
    ly += 16;
  }
  const std::vector<double> xt = {0, x_max / 5, 2 * x_max / 5, 3 * x_max / 5,
                                  4 * x_max / 5, x_max};
  const std::vector<double> yt = {0, 0.25, 0.5, 0.75, 1.0};
  svgdetail::axes(s, f, "fraction of initially active nodes",
                  "final activation size / N", xt, yt);
  s += "</svg>\n";
  return s;
}

/// Five-number summary plus mean. Quartiles use linear interpolation between
/// order statistics.
struct BoxStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

inline BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("box_stats: empty sample");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * (static_cast<double>(values.size()) - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double w = pos - static_cast<double>(lo);
    return values[lo] * (1 - w) + values[lo + 1] * w;
  };
  BoxStats b;
  b.min = values.front();
  b.max = values.back();
  b.q1 = quantile(0.25);
  b.median = quantile(0.5);
  b.q3 = quantile(0.75);
  double sum = 0;
  for (double v : values) sum += v;
  b.mean = sum / static_cast<double>(values.size());
  return b;
}

/// Vertical boxplots (quartile box, min/max whiskers, median line, mean
/// diamond), one slot per named entry, value axis [y_min, y_max].
inline std::string render_boxplot_svg(
    const std::string& title,
    std::span<const std::pair<std::string, BoxStats>> boxes, double y_min,
    double y_max, const std::string& y_label) {
  if (boxes.empty()) throw std::invalid_argument("render_boxplot_svg: no boxes");
  svgdetail::Frame f;
  f.right = 24;
  f.x_min = 0;
  f.x_max = static_cast<double>(boxes.size());
  f.y_min = y_min;
  f.y_max = y_max;
  std::string s;
  svgdetail::open_svg(s, f, title);

  const double slot = (f.px(1) - f.px(0));
  const double half = slot * 0.28;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& [name, b] = boxes[i];
    const double cx = f.px(static_cast<double>(i) + 0.5);
    const char* color = kSeriesColors[i % 7];
    s += "<line x1=\"" + format_coord(cx) + "\" y1=\"" + format_coord(f.py(b.min)) +
         "\" x2=\"" + format_coord(cx) + "\" y2=\"" + format_coord(f.py(b.max)) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (double w : {b.min, b.max})
      s += "<line x1=\"" + format_coord(cx - half / 2) + "\" y1=\"" +
           format_coord(f.py(w)) + "\" x2=\"" + format_coord(cx + half / 2) +
           "\" y2=\"" + format_coord(f.py(w)) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "<rect x=\"" + format_coord(cx - half) + "\" y=\"" +
         format_coord(f.py(b.q3)) + "\" width=\"" + format_coord(2 * half) +
         "\" height=\"" + format_coord(std::max(0.5, f.py(b.q1) - f.py(b.q3))) +
         "\" fill=\"" + color + "\" fill-opacity=\"0.35\" stroke=\"black\" "
         "class=\"box\"/>\n";
    s += "<line x1=\"" + format_coord(cx - half) + "\" y1=\"" +
         format_coord(f.py(b.median)) + "\" x2=\"" + format_coord(cx + half) +
         "\" y2=\"" + format_coord(f.py(b.median)) +
         "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    s += "<path d=\"M " + format_coord(cx) + " " + format_coord(f.py(b.mean) - 4) +
         " L " + format_coord(cx + 4) + " " + format_coord(f.py(b.mean)) + " L " +
         format_coord(cx) + " " + format_coord(f.py(b.mean) + 4) + " L " +
         format_coord(cx - 4) + " " + format_coord(f.py(b.mean)) +
         " Z\" fill=\"black\" class=\"mean\"/>\n";
    s += "<text x=\"" + format_coord(cx) + "\" y=\"" +
         format_coord(f.height - f.bottom + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">" + name + "</text>\n";
  }
  std::vector<double> yt;
  for (double t = std::ceil(y_min); t <= y_max; t += 1.0) yt.push_back(t);
  svgdetail::axes(s, f, "", y_label, {}, yt);
  s += "</svg>\n";
  return s;
}

}  // namespace ltrank

#include "coverfollow/harness/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace coverfollow::harness {

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string trajectory_svg(const Scenario& scenario, std::span<const EpisodeLog> logs,
                           int size_px) {
  const auto& g = *scenario.grid;
  const Box2 b = g.bounds();
  const double span = std::max(b.max.x - b.min.x, b.max.y - b.min.y);
  const double scale = size_px / span;
  // Map y up.
  auto px = [&](double x) { return (x - b.min.x) * scale; };
  auto py = [&](double y) { return size_px - (y - b.min.y) * scale; };

  std::string svg = fmt(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
      size_px, size_px, size_px, size_px);

  // Coarse height shading, at most 80x80 tiles.
  const std::size_t stride = std::max<std::size_t>(1, g.width_cells() / 80);
  const double lo = g.min_height();
  const double range = std::max(1e-9, g.relief());
  const double tile = stride * g.cell_size() * scale;
  for (std::size_t j = 0; j < g.height_cells(); j += stride) {
    for (std::size_t i = 0; i < g.width_cells(); i += stride) {
      const int shade = 90 + static_cast<int>(150.0 * (g.at(i, j) - lo) / range);
      const Vec2 c = g.cell_center(i, j);
      svg += fmt("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"rgb(%d,%d,%d)\"/>\n",
                 px(c.x), py(c.y) - tile, tile + 0.5, tile + 0.5, shade / 2, shade, shade / 2);
    }
  }
  for (const auto& o : scenario.objects) {
    svg += fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\" fill-opacity=\"0.8\"/>\n",
               px(o.position.x), py(o.position.y), o.footprint_radius * scale,
               is_cover_class(o.cls) ? "#3b2f1e" : "#777777");
  }
  for (std::size_t k = 0; k < logs.size(); ++k) {
    const auto& log = logs[k];
    if (log.records.empty()) continue;
    const char* color = kPalette[k % std::size(kPalette)];
    std::string points;
    for (const auto& r : log.records) points += fmt("%.2f,%.2f ", px(r.state.x), py(r.state.y));
    svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    const auto& s = log.records.front().state;
    svg += fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"white\" stroke=\"%s\"/>\n", px(s.x),
               py(s.y), color);
    svg += fmt("<rect x=\"%.2f\" y=\"%.2f\" width=\"8\" height=\"8\" fill=\"%s\"/>\n",
               px(log.goal.x) - 4, py(log.goal.y) - 4, color);
  }
  svg += "</svg>\n";
  return svg;
}

std::string learning_curve_svg(std::span<const double> curve, int window, int width_px,
                               int height_px) {
  std::string svg = fmt(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\">\n"
      "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
      width_px, height_px);
  if (curve.empty()) return svg + "</svg>\n";
  const double margin = 40.0;
  const auto [lo_it, hi_it] = std::minmax_element(curve.begin(), curve.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (hi - lo < 1e-9) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double n = std::max<double>(1.0, static_cast<double>(curve.size()) - 1.0);
  auto px = [&](double i) { return margin + i / n * (width_px - 2 * margin); };
  auto py = [&](double v) { return height_px - margin - (v - lo) / (hi - lo) * (height_px - 2 * margin); };

  svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", margin,
             height_px - margin, width_px - margin, height_px - margin);
  svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", margin,
             margin, margin, height_px - margin);
  svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">%.1f</text>\n", 2.0, margin, hi);
  svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">%.1f</text>\n", 2.0,
             height_px - margin, lo);
  svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">episode</text>\n",
             width_px / 2.0, height_px - 10.0);

  std::string raw;
  std::string smooth;
  double sum = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    raw += fmt("%.2f,%.2f ", px(i), py(curve[i]));
    sum += curve[i];
    if (static_cast<int>(i) >= window) sum -= curve[i - window];
    const double count = std::min<double>(i + 1, window);
    smooth += fmt("%.2f,%.2f ", px(i), py(sum / count));
  }
  svg += "<polyline points=\"" + raw + "\" fill=\"none\" stroke=\"#9ecae1\"/>\n";
  svg += "<polyline points=\"" + smooth + "\" fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\"/>\n";
  return svg + "</svg>\n";
}

}  // namespace coverfollow::harness

#include "belab/svg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace belab {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 56;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

} // namespace

std::string render_loglog_svg(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<SvgSeries>& series,
                              const std::string& comment) {
  double lx0 = 0, lx1 = 0, ly0 = 0, ly1 = 0;
  bool first = true;
  for (const SvgSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0 && y > 0.0))
        throw std::invalid_argument("render_loglog_svg: points must be positive");
      const double lx = std::log10(x), ly = std::log10(y);
      if (first) {
        lx0 = lx1 = lx;
        ly0 = ly1 = ly;
        first = false;
      } else {
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
      }
    }
  }
  if (first) throw std::invalid_argument("render_loglog_svg: no points");
  if (lx1 - lx0 < 1e-9) lx1 = lx0 + 1.0;
  if (ly1 - ly0 < 1e-9) ly1 = ly0 + 1.0;
  const double pad_x = 0.04 * (lx1 - lx0), pad_y = 0.06 * (ly1 - ly0);
  lx0 -= pad_x;
  lx1 += pad_x;
  ly0 -= pad_y;
  ly1 += pad_y;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (std::log10(x) - lx0) / (lx1 - lx0) * plot_w; };
  auto py = [&](double y) { return kMarginTop + (ly1 - std::log10(y)) / (ly1 - ly0) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\">\n";
  if (!comment.empty()) svg += "<!-- " + comment + " -->\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";

  // Frame and decade ticks.
  svg += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" + std::to_string(kMarginTop) +
         "\" width=\"" + fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
    const double x = px(std::pow(10.0, e));
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + std::to_string(kMarginTop) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(kMarginTop + plot_h) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kMarginTop + plot_h + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" +
           std::to_string(e) + "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
    const double y = py(std::pow(10.0, e));
    svg += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + std::to_string(kMarginLeft - 8) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" +
           std::to_string(e) + "</text>\n";
  }
  svg += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" + std::to_string(kHeight - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + x_label +
         "</text>\n";
  svg += "<text x=\"18\" y=\"" + std::to_string(kHeight / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
         std::to_string(kHeight / 2) + ")\">" + y_label + "</text>\n";

  int legend_y = kMarginTop + 16;
  for (const SvgSeries& s : series) {
    std::string path;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      path += (i == 0 ? "M" : "L");
      path += fmt(px(s.points[i].first)) + " " + fmt(py(s.points[i].second)) + " ";
    }
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"/>\n";
    if (s.markers) {
      for (const auto& [x, y] : s.points)
        svg += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"3\" fill=\"" +
               s.color + "\"/>\n";
    }
    svg += "<text x=\"" + std::to_string(kMarginLeft + 12) + "\" y=\"" + std::to_string(legend_y) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + s.color + "\">" + s.label +
           "</text>\n";
    legend_y += 16;
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace belab

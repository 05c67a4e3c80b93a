#ifndef BELAB_SVG_HPP
#define BELAB_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace belab {

// Minimal log-log scatter/line plot emitter; no plotting dependency.
struct SvgSeries {
  std::string label;
  std::string color;
  bool markers = false;
  std::vector<std::pair<double, double>> points;  // (x, y), all > 0
};

std::string render_loglog_svg(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<SvgSeries>& series,
                              const std::string& comment = "");

} // namespace belab

#endif

#include "belab/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace belab {

RateFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_loglog: need at least 3 points");
  std::vector<double> lx(points.size()), ly(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [n, d] = points[i];
    if (!(n > 0.0)) throw std::invalid_argument("fit_loglog: n must be positive");
    if (!(d > 0.0)) throw std::invalid_argument("fit_loglog: d must be positive (exclude zeros)");
    for (std::size_t j = 0; j < i; ++j)
      if (points[j].first == n) throw std::invalid_argument("fit_loglog: n values must be distinct");
    lx[i] = std::log(n);
    ly[i] = std::log(d);
  }

  const double count = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
    syy += (ly[i] - my) * (ly[i] - my);
  }

  RateFit fit;
  fit.points = points;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double resid = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += resid * resid;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.scaled.reserve(points.size());
  for (const auto& [n, d] : points) fit.scaled.emplace_back(n, std::sqrt(n) * d);
  return fit;
}

MomentFunctionals moment_functionals(const std::vector<PathStats>& paths, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("moment_functionals: p must be >= 1");
  if (paths.empty()) throw std::invalid_argument("moment_functionals: empty path set");
  double sum_bracket = 0.0, comp_bracket = 0.0;
  double sum_max = 0.0, comp_max = 0.0;
  for (const PathStats& stats : paths) {
    double v = std::pow(std::fabs(stats.bracket_n - 1.0), p);
    double y = v - comp_bracket;
    double t = sum_bracket + y;
    comp_bracket = (t - sum_bracket) - y;
    sum_bracket = t;

    v = std::pow(stats.max_abs_xi, 2.0 * p);
    y = v - comp_max;
    t = sum_max + y;
    comp_max = (t - sum_max) - y;
    sum_max = t;
  }
  const double count = static_cast<double>(paths.size());
  MomentFunctionals f;
  f.moment_bracket = sum_bracket / count;
  f.moment_max = sum_max / count;
  f.combined = std::pow(f.moment_bracket + f.moment_max, 1.0 / (2.0 * p + 1.0));
  return f;
}

std::vector<double> bound_curve(const std::vector<double>& eps, const std::vector<double>& delta,
                                double c) {
  if (!(c > 0.0)) throw std::invalid_argument("bound_curve: c must be > 0");
  if (eps.size() != delta.size()) throw std::invalid_argument("bound_curve: series length mismatch");
  std::vector<double> curve(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) curve[i] = c * (eps[i] + delta[i]);
  return curve;
}

double tightness_constant(const std::vector<double>& d, const std::vector<double>& eps,
                          const std::vector<double>& delta) {
  if (d.size() != eps.size() || d.size() != delta.size() || d.empty())
    throw std::invalid_argument("tightness_constant: series length mismatch");
  double c_hat = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double denom = eps[i] + delta[i];
    if (!(denom > 0.0)) throw std::invalid_argument("tightness_constant: eps + delta must be > 0");
    c_hat = std::max(c_hat, d[i] / denom);
  }
  return c_hat;
}

} // namespace belab

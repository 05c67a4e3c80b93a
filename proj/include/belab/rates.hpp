#ifndef BELAB_RATES_HPP
#define BELAB_RATES_HPP

#include <utility>
#include <vector>

#include "belab/model.hpp"

namespace belab {

// Ordinary least squares on (log n, log d).
struct RateFit {
  std::vector<std::pair<double, double>> points;  // (n, d)
  double slope = 0.0;
  double intercept = 0.0;  // of log d vs log n
  double r2 = 0.0;
  std::vector<std::pair<double, double>> scaled;  // (n, sqrt(n) * d)
};

// Requires >= 3 points with distinct n and all d > 0 (zero Monte Carlo
// distances must be excluded by the caller; clamping would bias the slope).
RateFit fit_loglog(const std::vector<std::pair<double, double>>& points);

// Sample moment functionals of a path set:
//   moment_bracket = mean |<X>_n - 1|^p
//   moment_max     = mean max_i |xi_i|^{2p}
//   combined       = (moment_bracket + moment_max)^{1/(2p+1)}
struct MomentFunctionals {
  double moment_bracket = 0.0;
  double moment_max = 0.0;
  double combined = 0.0;
};

MomentFunctionals moment_functionals(const std::vector<PathStats>& paths, double p);

// Pointwise c * (eps + delta) for overlay curves; c > 0, equal-length series.
std::vector<double> bound_curve(const std::vector<double>& eps, const std::vector<double>& delta,
                                double c);

// Empirical constant making the bound curve tight: max_i d_i / (eps_i + delta_i).
double tightness_constant(const std::vector<double>& d, const std::vector<double>& eps,
                          const std::vector<double>& delta);

} // namespace belab

#endif

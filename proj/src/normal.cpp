#include "belab/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace belab {

double std_normal_cdf(double x) {
  if (std::isnan(x)) throw std::invalid_argument("std_normal_cdf: x must be finite");
  if (x > 40.0) return 1.0;
  if (x < -40.0) return 0.0;
  // Phi(x) = erfc(-x/sqrt(2)) / 2. erfc keeps full relative accuracy in the
  // lower tail, where 1 - Phi(-x) would lose everything to cancellation.
  return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double std_normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014326779399461;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

} // namespace belab

#ifndef BELAB_DIST_HPP
#define BELAB_DIST_HPP

#include <string>
#include <vector>

#include "belab/model.hpp"

namespace belab {

enum class DistanceMethod { exact_binomial, exact_enumeration, monte_carlo };

std::string distance_method_name(DistanceMethod method);

struct KolmogorovResult {
  double d = 0.0;                                       // sup_x |P(X <= x) - Phi(x)|
  DistanceMethod method = DistanceMethod::monte_carlo;
  long sample_size = 0;                                 // monte_carlo only
  double dkw_band = 0.0;                                // 95% half-width, monte_carlo only
  double argsup = 0.0;                                  // where the sup is attained
};

// Half-width of the DKW confidence band: sqrt(ln(2/(1-confidence)) / (2N)).
double dkw_band(long sample_count, double confidence);

// Empirical Kolmogorov distance of a sample against the standard normal.
// The sup of |F_hat - Phi| is attained at a sample point from one side or
// the other, so only those 2N candidates are examined; tied values are
// processed as one block.
KolmogorovResult kolmogorov_distance(std::vector<double> samples);

// CDF of Binomial(n, 1/2) at every lattice point k = 0..n. Sums run from the
// nearer tail (upper half obtained by symmetry) with compensated summation;
// log-domain coefficients are used once plain pmf recursion would underflow.
std::vector<double> binomial_half_cdf(long n);

// Exact distance for the normalized sign walk X_n = (2K - n)/sqrt(n),
// K ~ Binomial(n, 1/2), evaluating both CDF limits at all n+1 jump points.
KolmogorovResult exact_rademacher_distance(long n);

// Brute-force oracle: enumerates all 2^n branch paths of the model with
// their exact probabilities and computes the distance of the resulting
// discrete law. Requires n <= 20.
KolmogorovResult enumerate_model_distance(const MdsModel& model);

} // namespace belab

#endif

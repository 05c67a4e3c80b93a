#include "belab/enlarge.hpp"

#include <cmath>
#include <stdexcept>

#include "belab/rng.hpp"

namespace belab {

EnlargedSequence enlarge_to_unit_variance(const std::vector<double>& bracket, double epsilon,
                                          std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("enlarge_to_unit_variance: epsilon must be > 0");
  const long n = static_cast<long>(bracket.size());
  double prev = 0.0;
  for (double v : bracket) {
    if (!(v >= prev)) throw std::invalid_argument("enlarge_to_unit_variance: bracket must be non-decreasing");
    prev = v;
  }

  EnlargedSequence out;
  out.pad_scale = epsilon;
  // tau = largest k <= n with <X>_k <= 1; <X>_0 = 0 always qualifies.
  out.tau = 0;
  for (long k = 1; k <= n; ++k) {
    if (bracket[static_cast<std::size_t>(k - 1)] <= 1.0) out.tau = k;
    else break;
  }
  const double at_tau = out.tau == 0 ? 0.0 : bracket[static_cast<std::size_t>(out.tau - 1)];
  const double gap = 1.0 - at_tau;  // >= 0 since <X>_tau <= 1
  const double eps2 = epsilon * epsilon;
  out.r = static_cast<long>(std::floor(gap / eps2));
  double residual2 = gap - static_cast<double>(out.r) * eps2;
  if (residual2 < 0.0) residual2 = 0.0;  // floor boundary rounding
  out.residual_step = std::sqrt(residual2);
  out.N = n + out.r + 1;

  // Differences after tau: r pad steps of size epsilon, one residual step
  // (emitted even when zero so N = n + r + 1 always), zeros for the
  // replaced original steps.
  out.pad.resize(static_cast<std::size_t>(out.N - out.tau), 0.0);
  for (long j = 0; j < out.r; ++j)
    out.pad[static_cast<std::size_t>(j)] =
        epsilon * static_cast<double>(rng_sign(seed, 0, static_cast<std::uint64_t>(j + 1)));
  out.pad[static_cast<std::size_t>(out.r)] =
      out.residual_step * static_cast<double>(rng_sign(seed, 0, static_cast<std::uint64_t>(out.r + 1)));

  out.bracket_N = at_tau + static_cast<double>(out.r) * eps2 + out.residual_step * out.residual_step;
  return out;
}

} // namespace belab

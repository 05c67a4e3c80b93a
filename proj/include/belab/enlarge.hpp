#ifndef BELAB_ENLARGE_HPP
#define BELAB_ENLARGE_HPP

#include <cstdint>
#include <vector>

namespace belab {

// Unit-variance completion of a martingale: stop at the last index tau whose
// conditional variance is still <= 1, then append scaled sign steps until the
// conditional variance is exactly 1.
struct EnlargedSequence {
  long tau = 0;                // stopping index in [0, n]
  long r = 0;                  // number of epsilon-sized pad steps
  double pad_scale = 0.0;      // epsilon used for padding
  double residual_step = 0.0;  // scale of the single remainder step, in [0, epsilon)
  long N = 0;                  // n + r + 1
  double bracket_N = 0.0;      // final conditional variance (1 up to rounding)
  // Realized differences for indices tau+1 .. N: r pad steps, the residual
  // step, then zeros replacing the discarded original steps.
  std::vector<double> pad;
};

// bracket holds <X>_1..<X>_n (non-decreasing, <X>_0 = 0 implicit); epsilon
// must satisfy 0 < epsilon (and epsilon <= eps_n of the source model for the
// moment conditions to carry over). The pad signs are drawn from `seed`.
EnlargedSequence enlarge_to_unit_variance(const std::vector<double>& bracket, double epsilon,
                                          std::uint64_t seed);

} // namespace belab

#endif

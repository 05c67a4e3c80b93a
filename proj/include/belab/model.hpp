#ifndef BELAB_MODEL_HPP
#define BELAB_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace belab {

// Martingale-difference families with closed-form conditional moments.
//
// All four kinds are built from two-point conditional laws, so every
// conditional moment (and the tight constants of the moment conditions) can
// be computed by finite maximization instead of Monte Carlo:
//
//   scaled_rademacher  xi_i = z_i / sqrt(n)                      (iid signs)
//   pair_compensated   odd step variance 1 + eta*z_{i-1}, even step
//                      variance 2 - (previous odd), so the conditional
//                      variance sums to exactly 1 on every path
//   tilted             step 1 is a plain scaled sign; steps >= 2 use
//                      s^2 = 1 + delta^2 * z_1, making <X>_n - 1 equal to
//                      delta^2 * z_1 * (n-1)/n with F_1-measurable scaling
//   skewed_violation   asymmetric two-point law (mean zero, variance 1/n,
//                      third conditional moment != 0) -- the contrast case
enum class MdsKind { scaled_rademacher, pair_compensated, tilted, skewed_violation };

struct MdsModel {
  MdsKind kind = MdsKind::scaled_rademacher;
  long n = 1;          // horizon
  double rho = 1.0;    // moment exponent, > 0
  double eta = 0.0;    // pair modulation amplitude in [0, 1/2]
  double delta = 0.0;  // tilt amplitude in [0, 1/2]
  double skew = 0.0;   // asymmetry in (-1, 0) u (0, 1), skewed_violation only

  // Throws std::invalid_argument on any out-of-range parameter.
  void validate() const;
};

std::string mds_kind_name(MdsKind kind);
MdsKind mds_kind_from_name(const std::string& name);

struct MartingalePath {
  std::vector<double> xi;       // xi_1 .. xi_n
  std::vector<double> bracket;  // <X>_1 .. <X>_n (non-decreasing)
  double x_n = 0.0;             // terminal sum
};

// Per-path summary sufficient for the moment functionals; cheap to collect
// in bulk because no vectors are allocated.
struct PathStats {
  double x_n = 0.0;
  double bracket_n = 0.0;
  double max_abs_xi = 0.0;
};

struct ConditionReport {
  double epsilon_n = 0.0;          // smallest eps satisfying the (3+rho)-moment bound
  double delta_n = 0.0;            // smallest delta with |<X>_n - 1| <= delta^2
  double third_moment_max = 0.0;   // max over histories of |E[xi^3 | F]|
  bool lemma2_ok = false;          // max conditional variance <= epsilon_n^2
  bool satisfied = false;
};

// A zero-mean conditional two-point law: value `up` with probability `p_up`,
// value `down` otherwise.
struct TwoPointLaw {
  double up = 0.0;
  double down = 0.0;
  double p_up = 0.5;

  bool symmetric() const { return p_up == 0.5 && up == -down; }
  double variance() const;
  double third_moment() const;
  double abs_moment(double t) const;  // E|xi|^t
  // Smallest eps with E|xi|^{3+rho} <= eps^{1+rho} E[xi^2] for this law.
  double tight_epsilon(double rho) const;
};

// The distinct conditional laws a model can present across all steps and
// histories (finitely many by construction).
std::vector<TwoPointLaw> distinct_laws(const MdsModel& model);

// Draws one path. Deterministic in (model, seed, path_index); paths with
// different indices use disjoint counter streams.
MartingalePath sample_path(const MdsModel& model, std::uint64_t seed, std::uint64_t path_index);

// Same walk without materializing the per-step vectors.
PathStats sample_path_stats(const MdsModel& model, std::uint64_t seed, std::uint64_t path_index);
double sample_terminal(const MdsModel& model, std::uint64_t seed, std::uint64_t path_index);

// Replays a path from explicit branch outcomes (true = up branch); outcomes
// beyond n are ignored. Used by the enumeration oracle and tests.
MartingalePath path_from_outcomes(const MdsModel& model, const std::vector<bool>& up);

// Certifies the moment conditions with exact finite maximization over the
// model's conditional laws.
ConditionReport condition_report(const MdsModel& model);

} // namespace belab

#endif

#include "belab/model.hpp"

#include <cmath>
#include <stdexcept>

#include "belab/rng.hpp"

namespace belab {

namespace {

constexpr double kRelSlack = 1e-12;  // tolerance for <=-comparisons between closed forms

struct KahanSum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Walk state: everything the next conditional law depends on.
struct StepState {
  int prev_sign = 1;          // sign drawn at the previous step; zeta_0 := +1
  int first_sign = 0;         // zeta_1 once drawn (tilted)
  double odd_sigma2 = 1.0;    // sigma^2 of the most recent odd step (pair_compensated)
};

// sigma^2 multiplier of step i given the history; the step law is then
// +-sqrt(sigma2)/sqrt(n) for the symmetric kinds.
double sigma2_for_step(const MdsModel& m, long i, const StepState& st) {
  switch (m.kind) {
    case MdsKind::scaled_rademacher:
    case MdsKind::skewed_violation:
      return 1.0;
    case MdsKind::pair_compensated:
      if (i % 2 == 1) return 1.0 + m.eta * (i == 1 ? 1 : st.prev_sign);
      return 2.0 - st.odd_sigma2;
    case MdsKind::tilted: {
      if (i == 1) return 1.0;
      const double s2 = 1.0 + m.delta * m.delta * st.first_sign;
      return s2 > 0.0 ? s2 : 0.0;
    }
  }
  return 1.0;
}

// Asymmetric unit-sigma2 two-point law for skew parameter t in (-1,1):
// q = (1-t)/2, values a = sqrt((1-q)/q), -b = -sqrt(q/(1-q)). Mean is zero
// by construction (a q = b (1-q)) and E[xi^2] = 1.
void skewed_unit_law(double t, double& up, double& down, double& p_up) {
  const double q = 0.5 * (1.0 - t);
  up = std::sqrt((1.0 - q) / q);
  down = -std::sqrt(q / (1.0 - q));
  p_up = q;
}

TwoPointLaw law_for_step(const MdsModel& m, long i, const StepState& st, double inv_sqrt_n) {
  TwoPointLaw law;
  if (m.kind == MdsKind::skewed_violation) {
    skewed_unit_law(m.skew, law.up, law.down, law.p_up);
    law.up *= inv_sqrt_n;
    law.down *= inv_sqrt_n;
  } else {
    const double scale = std::sqrt(sigma2_for_step(m, i, st)) * inv_sqrt_n;
    law.up = scale;
    law.down = -scale;
    law.p_up = 0.5;
  }
  return law;
}

// Conditional variance increment in closed form, kept separate from the law
// so sums of increments stay exact where the construction makes them exact.
double variance_for_step(const MdsModel& m, long i, const StepState& st) {
  if (m.kind == MdsKind::skewed_violation) return 1.0 / static_cast<double>(m.n);
  return sigma2_for_step(m, i, st) / static_cast<double>(m.n);
}

void advance(const MdsModel& m, StepState& st, long i, bool up_branch) {
  if (m.kind == MdsKind::pair_compensated && i % 2 == 1) {
    st.odd_sigma2 = sigma2_for_step(m, i, st);
  }
  st.prev_sign = up_branch ? 1 : -1;
  if (i == 1) st.first_sign = st.prev_sign;
}

// Core walk shared by the samplers and the replay entry point. on_step is
// called once per step with (xi, conditional variance increment).
template <typename Branch, typename OnStep>
void walk(const MdsModel& m, Branch&& branch, OnStep&& on_step) {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(m.n));
  StepState st;
  for (long i = 1; i <= m.n; ++i) {
    const TwoPointLaw law = law_for_step(m, i, st, inv_sqrt_n);
    const bool up = branch(i, law);
    on_step(up ? law.up : law.down, variance_for_step(m, i, st));
    advance(m, st, i, up);
  }
}

bool draw_branch(const MdsModel& m, std::uint64_t seed, std::uint64_t path_index, long i,
                 const TwoPointLaw& law) {
  if (m.kind == MdsKind::skewed_violation) {
    return rng_uniform01(seed, path_index, static_cast<std::uint64_t>(i)) < law.p_up;
  }
  return rng_sign(seed, path_index, static_cast<std::uint64_t>(i)) > 0;
}

} // namespace

void MdsModel::validate() const {
  if (n < 1) throw std::invalid_argument("MdsModel: n must be >= 1");
  if (!(rho > 0.0)) throw std::invalid_argument("MdsModel: rho must be > 0");
  if (!(eta >= 0.0 && eta <= 0.5))
    throw std::invalid_argument("MdsModel: eta must lie in [0, 1/2]");
  if (!(delta >= 0.0 && delta <= 0.5))
    throw std::invalid_argument("MdsModel: delta must lie in [0, 1/2]");
  if (kind == MdsKind::pair_compensated && (n < 2 || n % 2 != 0))
    throw std::invalid_argument("MdsModel: pair_compensated needs even n >= 2");
  if (kind == MdsKind::skewed_violation) {
    if (!(skew > -1.0 && skew < 1.0) || skew == 0.0)
      throw std::invalid_argument("MdsModel: skew must lie in (-1,0) or (0,1)");
  }
}

std::string mds_kind_name(MdsKind kind) {
  switch (kind) {
    case MdsKind::scaled_rademacher: return "scaled-rademacher";
    case MdsKind::pair_compensated: return "pair-compensated";
    case MdsKind::tilted: return "tilted";
    case MdsKind::skewed_violation: return "skewed-violation";
  }
  throw std::invalid_argument("mds_kind_name: unknown kind");
}

MdsKind mds_kind_from_name(const std::string& name) {
  if (name == "scaled-rademacher") return MdsKind::scaled_rademacher;
  if (name == "pair-compensated") return MdsKind::pair_compensated;
  if (name == "tilted") return MdsKind::tilted;
  if (name == "skewed-violation") return MdsKind::skewed_violation;
  throw std::invalid_argument("unknown model kind: " + name);
}

double TwoPointLaw::variance() const {
  return p_up * up * up + (1.0 - p_up) * down * down;
}

double TwoPointLaw::third_moment() const {
  if (symmetric()) return 0.0;
  return p_up * up * up * up + (1.0 - p_up) * down * down * down;
}

double TwoPointLaw::abs_moment(double t) const {
  return p_up * std::pow(std::fabs(up), t) + (1.0 - p_up) * std::pow(std::fabs(down), t);
}

double TwoPointLaw::tight_epsilon(double rho) const {
  // Symmetric law {+-v}: the ratio E|xi|^{3+rho} / E[xi^2] is v^{1+rho}, so
  // the tight eps is exactly v (kept exact rather than via pow round trips).
  if (symmetric()) return up;
  return std::pow(abs_moment(3.0 + rho) / variance(), 1.0 / (1.0 + rho));
}

std::vector<TwoPointLaw> distinct_laws(const MdsModel& m) {
  m.validate();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(m.n));
  auto sym = [&](double sigma2) {
    const double v = std::sqrt(sigma2) * inv_sqrt_n;
    return TwoPointLaw{v, -v, 0.5};
  };
  switch (m.kind) {
    case MdsKind::scaled_rademacher:
      return {sym(1.0)};
    case MdsKind::pair_compensated:
      if (m.eta == 0.0) return {sym(1.0)};
      return {sym(1.0 + m.eta), sym(1.0 - m.eta)};
    case MdsKind::tilted: {
      if (m.n == 1 || m.delta == 0.0) return {sym(1.0)};
      const double d2 = m.delta * m.delta;
      return {sym(1.0), sym(1.0 + d2), sym(1.0 - d2)};
    }
    case MdsKind::skewed_violation: {
      TwoPointLaw law;
      skewed_unit_law(m.skew, law.up, law.down, law.p_up);
      law.up *= inv_sqrt_n;
      law.down *= inv_sqrt_n;
      return {law};
    }
  }
  throw std::invalid_argument("distinct_laws: unknown kind");
}

MartingalePath sample_path(const MdsModel& m, std::uint64_t seed, std::uint64_t path_index) {
  m.validate();
  MartingalePath path;
  path.xi.reserve(m.n);
  path.bracket.reserve(m.n);
  KahanSum sum, var;
  walk(
      m, [&](long i, const TwoPointLaw& law) { return draw_branch(m, seed, path_index, i, law); },
      [&](double xi, double dv) {
        sum.add(xi);
        var.add(dv);
        path.xi.push_back(xi);
        path.bracket.push_back(var.sum);
      });
  path.x_n = sum.sum;
  return path;
}

PathStats sample_path_stats(const MdsModel& m, std::uint64_t seed, std::uint64_t path_index) {
  m.validate();
  PathStats stats;
  KahanSum sum, var;
  walk(
      m, [&](long i, const TwoPointLaw& law) { return draw_branch(m, seed, path_index, i, law); },
      [&](double xi, double dv) {
        sum.add(xi);
        var.add(dv);
        const double a = std::fabs(xi);
        if (a > stats.max_abs_xi) stats.max_abs_xi = a;
      });
  stats.x_n = sum.sum;
  stats.bracket_n = var.sum;
  return stats;
}

double sample_terminal(const MdsModel& m, std::uint64_t seed, std::uint64_t path_index) {
  m.validate();
  KahanSum sum;
  walk(
      m, [&](long i, const TwoPointLaw& law) { return draw_branch(m, seed, path_index, i, law); },
      [&](double xi, double) { sum.add(xi); });
  return sum.sum;
}

MartingalePath path_from_outcomes(const MdsModel& m, const std::vector<bool>& up) {
  m.validate();
  if (static_cast<long>(up.size()) < m.n)
    throw std::invalid_argument("path_from_outcomes: need an outcome per step");
  MartingalePath path;
  path.xi.reserve(m.n);
  path.bracket.reserve(m.n);
  KahanSum sum, var;
  walk(
      m, [&](long i, const TwoPointLaw&) { return static_cast<bool>(up[i - 1]); },
      [&](double xi, double dv) {
        sum.add(xi);
        var.add(dv);
        path.xi.push_back(xi);
        path.bracket.push_back(var.sum);
      });
  path.x_n = sum.sum;
  return path;
}

ConditionReport condition_report(const MdsModel& m) {
  m.validate();
  ConditionReport report;
  double max_var = 0.0;
  for (const TwoPointLaw& law : distinct_laws(m)) {
    report.epsilon_n = std::max(report.epsilon_n, law.tight_epsilon(m.rho));
    report.third_moment_max = std::max(report.third_moment_max, std::fabs(law.third_moment()));
    max_var = std::max(max_var, law.variance());
  }
  // |<X>_n - 1| over all histories, from the constructions' closed forms:
  // only the tilted family moves the terminal conditional variance, by
  // delta^2 * (n-1)/n in either direction.
  if (m.kind == MdsKind::tilted && m.n >= 2) {
    const double dev = m.delta * m.delta * (static_cast<double>(m.n) - 1.0) / static_cast<double>(m.n);
    report.delta_n = std::sqrt(dev);
  }
  report.lemma2_ok = max_var <= report.epsilon_n * report.epsilon_n * (1.0 + kRelSlack);
  report.satisfied =
      report.third_moment_max == 0.0 && report.delta_n <= 0.5 && report.epsilon_n <= 0.5;
  return report;
}

} // namespace belab

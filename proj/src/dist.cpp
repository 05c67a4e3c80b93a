#include "belab/dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "belab/normal.hpp"

namespace belab {

namespace {

constexpr long kMaxExactN = 1L << 22;  // cost/precision guard for the lattice sweep

struct KahanSum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Sup over candidate jump points (value, cdf_left, cdf_right).
struct SupTracker {
  double best = -1.0, argsup = 0.0;
  void consider(double x, double cdf_left, double cdf_right) {
    const double phi = std_normal_cdf(x);
    const double dev = std::max(std::fabs(cdf_right - phi), std::fabs(cdf_left - phi));
    if (dev > best) {
      best = dev;
      argsup = x;
    }
  }
};

} // namespace

std::string distance_method_name(DistanceMethod method) {
  switch (method) {
    case DistanceMethod::exact_binomial: return "exact-binomial";
    case DistanceMethod::exact_enumeration: return "exact-enumeration";
    case DistanceMethod::monte_carlo: return "monte-carlo";
  }
  throw std::invalid_argument("distance_method_name: unknown method");
}

double dkw_band(long sample_count, double confidence) {
  if (sample_count < 1) throw std::invalid_argument("dkw_band: N must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("dkw_band: confidence must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(sample_count)));
}

KolmogorovResult kolmogorov_distance(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("kolmogorov_distance: need N >= 1 samples");
  for (double v : samples)
    if (!std::isfinite(v)) throw std::invalid_argument("kolmogorov_distance: non-finite sample");
  std::sort(samples.begin(), samples.end());

  const double n = static_cast<double>(samples.size());
  SupTracker sup;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;  // tie block
    sup.consider(samples[i], static_cast<double>(i) / n, static_cast<double>(j) / n);
    i = j;
  }

  KolmogorovResult result;
  result.d = sup.best;
  result.method = DistanceMethod::monte_carlo;
  result.sample_size = static_cast<long>(samples.size());
  result.dkw_band = dkw_band(result.sample_size, 0.95);
  result.argsup = sup.argsup;
  return result;
}

std::vector<double> binomial_half_cdf(long n) {
  if (n < 1) throw std::invalid_argument("binomial_half_cdf: n must be >= 1");
  if (n > kMaxExactN) throw std::invalid_argument("binomial_half_cdf: n exceeds 2^22 guard");
  std::vector<double> cdf(static_cast<std::size_t>(n) + 1);
  const long half = n / 2;
  KahanSum acc;
  if (n <= 1000) {
    // pmf(0) = 2^-n is representable here; ascend through the lower tail so
    // small terms are accumulated before large ones.
    double pmf = std::ldexp(1.0, static_cast<int>(-n));
    for (long k = 0; k <= half; ++k) {
      if (k > 0) pmf *= static_cast<double>(n - k + 1) / static_cast<double>(k);
      acc.add(pmf);
      cdf[static_cast<std::size_t>(k)] = acc.sum;
    }
  } else {
    const double log_total = std::lgamma(static_cast<double>(n) + 1.0) -
                             static_cast<double>(n) * std::log(2.0);
    for (long k = 0; k <= half; ++k) {
      const double lp = log_total - std::lgamma(static_cast<double>(k) + 1.0) -
                        std::lgamma(static_cast<double>(n - k) + 1.0);
      acc.add(std::exp(lp));
      cdf[static_cast<std::size_t>(k)] = acc.sum;
    }
  }
  // Upper half by symmetry: P(K <= k) = 1 - P(K <= n-k-1).
  for (long k = half + 1; k <= n; ++k) {
    const long mirror = n - k - 1;
    cdf[static_cast<std::size_t>(k)] =
        mirror < 0 ? 1.0 : 1.0 - cdf[static_cast<std::size_t>(mirror)];
  }
  return cdf;
}

KolmogorovResult exact_rademacher_distance(long n) {
  if (n < 1) throw std::invalid_argument("exact_rademacher_distance: n must be >= 1");
  if (n > kMaxExactN)
    throw std::invalid_argument("exact_rademacher_distance: n exceeds 2^22 guard");
  const std::vector<double> cdf = binomial_half_cdf(n);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  SupTracker sup;
  for (long k = 0; k <= n; ++k) {
    const double x = (2.0 * static_cast<double>(k) - static_cast<double>(n)) / sqrt_n;
    const double lo = (k == 0) ? 0.0 : cdf[static_cast<std::size_t>(k - 1)];
    sup.consider(x, lo, cdf[static_cast<std::size_t>(k)]);
  }
  KolmogorovResult result;
  result.d = sup.best;
  result.method = DistanceMethod::exact_binomial;
  result.argsup = sup.argsup;
  return result;
}

KolmogorovResult enumerate_model_distance(const MdsModel& model) {
  model.validate();
  if (model.n > 20) throw std::invalid_argument("enumerate_model_distance: n must be <= 20");

  // Replay every branch path; atom probability is the product of branch
  // probabilities along the way.
  const std::size_t path_count = std::size_t{1} << model.n;
  std::vector<std::pair<double, double>> atoms;  // (value, probability)
  atoms.reserve(path_count);
  std::vector<bool> up(static_cast<std::size_t>(model.n));
  const bool symmetric = model.kind != MdsKind::skewed_violation;
  const double uniform_prob = std::ldexp(1.0, static_cast<int>(-model.n));
  const double q = 0.5 * (1.0 - model.skew);
  for (std::size_t mask = 0; mask < path_count; ++mask) {
    double prob = 1.0;
    for (long i = 0; i < model.n; ++i) {
      const bool b = (mask >> i) & 1u;
      up[static_cast<std::size_t>(i)] = b;
      if (!symmetric) prob *= b ? q : (1.0 - q);
    }
    if (symmetric) prob = uniform_prob;
    atoms.emplace_back(path_from_outcomes(model, up).x_n, prob);
  }

  std::sort(atoms.begin(), atoms.end());
  SupTracker sup;
  KahanSum cdf;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double left = cdf.sum;
    const double x = atoms[i].first;
    while (i < atoms.size() && atoms[i].first == x) {
      cdf.add(atoms[i].second);
      ++i;
    }
    sup.consider(x, left, cdf.sum);
  }

  KolmogorovResult result;
  result.d = sup.best;
  result.method = DistanceMethod::exact_enumeration;
  result.argsup = sup.argsup;
  return result;
}

} // namespace belab

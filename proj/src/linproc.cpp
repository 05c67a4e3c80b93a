#include "belab/linproc.hpp"

#include <cmath>
#include <stdexcept>

#include "belab/rng.hpp"

namespace belab {

namespace {

struct KahanSum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

} // namespace

double CoefficientSeq::at(long i) const {
  if (i < 0) throw std::invalid_argument("CoefficientSeq: negative index");
  if (i >= static_cast<long>(values.size())) {
    if (kind == CoeffKind::finite) return 0.0;
    throw std::invalid_argument("CoefficientSeq: index beyond truncation");
  }
  return values[static_cast<std::size_t>(i)];
}

double CoefficientSeq::tail_sq_mass(long k) const {
  if (k < 1) throw std::invalid_argument("tail_sq_mass: cutoff must be >= 1");
  switch (kind) {
    case CoeffKind::finite: {
      KahanSum s;
      for (long i = k + 1; i < static_cast<long>(values.size()); ++i) {
        const double a = values[static_cast<std::size_t>(i)];
        s.add(a * a);
      }
      return s.sum;
    }
    case CoeffKind::farima: {
      // a_i * i^{1-d} increases to 1/Gamma(d), so a_i <= i^{d-1}/Gamma(d) and
      // sum_{i>k} a_i^2 <= Gamma(d)^-2 * k^{1-2a}/(2a-1) with a = 1-d.
      const double c = 1.0 / std::tgamma(d);
      return c * c * std::pow(static_cast<double>(k), 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0);
    }
    case CoeffKind::power_law:
      return scale * scale * std::pow(static_cast<double>(k), 1.0 - 2.0 * alpha) /
             (2.0 * alpha - 1.0);
  }
  throw std::invalid_argument("tail_sq_mass: unknown kind");
}

std::string memory_class_name(MemoryClass mc) {
  switch (mc) {
    case MemoryClass::long_memory: return "long";
    case MemoryClass::short_memory: return "short";
    case MemoryClass::short_degenerate: return "short-degenerate";
  }
  throw std::invalid_argument("memory_class_name: unknown class");
}

CoefficientSeq farima_coefficients(double d, long m) {
  if (!(d > 0.0 && d < 0.5))
    throw std::invalid_argument("farima_coefficients: d must lie in (0, 1/2)");
  if (m < 1) throw std::invalid_argument("farima_coefficients: m must be >= 1");
  CoefficientSeq seq;
  seq.kind = CoeffKind::farima;
  seq.d = d;
  seq.alpha = 1.0 - d;
  seq.tail_exponent = 1.0 - d;
  seq.values.resize(static_cast<std::size_t>(m) + 1);
  seq.values[0] = 1.0;
  for (long i = 1; i <= m; ++i) {
    seq.values[static_cast<std::size_t>(i)] = seq.values[static_cast<std::size_t>(i - 1)] *
                                              (static_cast<double>(i) - 1.0 + d) /
                                              static_cast<double>(i);
  }
  seq.tail_mass_bound = seq.tail_sq_mass(m);
  return seq;
}

CoefficientSeq power_law_coefficients(double alpha, double scale, long m) {
  if (!(alpha > 0.5 && alpha < 1.0))
    throw std::invalid_argument("power_law_coefficients: alpha must lie in (1/2, 1)");
  if (!(scale > 0.0)) throw std::invalid_argument("power_law_coefficients: scale must be > 0");
  if (m < 1) throw std::invalid_argument("power_law_coefficients: m must be >= 1");
  CoefficientSeq seq;
  seq.kind = CoeffKind::power_law;
  seq.alpha = alpha;
  seq.scale = scale;
  seq.tail_exponent = alpha;
  seq.values.resize(static_cast<std::size_t>(m) + 1);
  seq.values[0] = 1.0;
  for (long i = 1; i <= m; ++i)
    seq.values[static_cast<std::size_t>(i)] = scale * std::pow(static_cast<double>(i), -alpha);
  seq.tail_mass_bound = seq.tail_sq_mass(m);
  return seq;
}

CoefficientSeq finite_coefficients(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("finite_coefficients: need at least a_0");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("finite_coefficients: non-finite value");
  CoefficientSeq seq;
  seq.kind = CoeffKind::finite;
  seq.values = std::move(values);
  seq.tail_exponent = 0.0;
  seq.tail_mass_bound = 0.0;
  return seq;
}

MemoryClass classify_memory(const CoefficientSeq& coeffs) {
  if (coeffs.kind != CoeffKind::finite) return MemoryClass::long_memory;
  KahanSum total, total_abs;
  for (double a : coeffs.values) {
    total.add(a);
    total_abs.add(std::fabs(a));
  }
  if (std::fabs(total.sum) <= 1e-12 * std::max(1.0, total_abs.sum))
    return MemoryClass::short_degenerate;
  return MemoryClass::short_memory;
}

PartialSumWeights partial_sum_weights(const CoefficientSeq& coeffs, long n, long m, double d_rho) {
  if (n < 1) throw std::invalid_argument("partial_sum_weights: n must be >= 1");
  if (m < n) throw std::invalid_argument("partial_sum_weights: need m >= n");
  if (!(d_rho > 0.0)) throw std::invalid_argument("partial_sum_weights: d_rho must be > 0");
  if (coeffs.kind != CoeffKind::finite && coeffs.truncation() < n + m)
    throw std::invalid_argument("partial_sum_weights: coefficients must cover indices up to n+m");

  // Prefix sums A[k] = a_0 + ... + a_k; then
  //   b_{n,i} = A[n-i]          for i >= 1
  //   b_{n,i} = A[n-i] - A[-i]  for i <= 0
  std::vector<double> prefix(static_cast<std::size_t>(n + m) + 1);
  {
    KahanSum acc;
    for (long k = 0; k <= n + m; ++k) {
      acc.add(coeffs.at(k));
      prefix[static_cast<std::size_t>(k)] = acc.sum;
    }
  }

  PartialSumWeights w;
  w.n = n;
  w.m = m;
  w.d_rho = d_rho;
  w.b.resize(static_cast<std::size_t>(n + m) + 1);
  KahanSum bn2;
  for (long i = -m; i <= n; ++i) {
    const double value = (i >= 1)
                             ? prefix[static_cast<std::size_t>(n - i)]
                             : prefix[static_cast<std::size_t>(n - i)] - prefix[static_cast<std::size_t>(-i)];
    w.b[static_cast<std::size_t>(i + m)] = value;
    bn2.add(value * value);
    const double a = std::fabs(value);
    if (a > w.b_sup) w.b_sup = a;
  }
  w.Bn2 = bn2.sum;
  if (!(w.Bn2 > 0.0)) throw std::invalid_argument("partial_sum_weights: Bn2 must be positive");
  w.eps_n = d_rho * w.b_sup / std::sqrt(w.Bn2);
  // Neglected past: each |b_{n,i}| with i < -m is a sum of n coefficients of
  // index > m, so sum_{i<-m} b^2 <= n^2 * sum_{k>m} a_k^2.
  w.tail_mass_bound = static_cast<double>(n) * static_cast<double>(n) * coeffs.tail_sq_mass(m);
  return w;
}

Innovations Innovations::rademacher() { return Innovations{}; }

Innovations Innovations::skewed(double skew) {
  if (!(skew > -1.0 && skew < 1.0))
    throw std::invalid_argument("Innovations::skewed: skew must lie in (-1, 1)");
  const double q = 0.5 * (1.0 - skew);
  return two_point(std::sqrt((1.0 - q) / q), -std::sqrt(q / (1.0 - q)), q);
}

Innovations Innovations::two_point(double up, double down, double p_up) {
  if (!(p_up > 0.0 && p_up < 1.0))
    throw std::invalid_argument("Innovations: p_up must lie in (0, 1)");
  const double mean = p_up * up + (1.0 - p_up) * down;
  const double var = p_up * up * up + (1.0 - p_up) * down * down - mean * mean;
  if (std::fabs(mean) > 1e-12) throw std::invalid_argument("Innovations: mean must be 0");
  if (std::fabs(var - 1.0) > 1e-12)
    throw std::invalid_argument("Innovations: variance must be 1 (unit normalization)");
  Innovations inn;
  inn.kind = Kind::two_point;
  inn.up = up;
  inn.down = down;
  inn.p_up = p_up;
  return inn;
}

Innovations Innovations::zero() {
  Innovations inn;
  inn.kind = Kind::zero;
  return inn;
}

double Innovations::draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) const {
  switch (kind) {
    case Kind::rademacher: return static_cast<double>(rng_sign(seed, stream, counter));
    case Kind::two_point: return rng_uniform01(seed, stream, counter) < p_up ? up : down;
    case Kind::zero: return 0.0;
  }
  throw std::invalid_argument("Innovations::draw: unknown kind");
}

double simulate_normalized_sum(const PartialSumWeights& weights, const Innovations& innovations,
                               std::uint64_t seed, std::uint64_t path_index) {
  KahanSum acc;
  const long m = weights.m, n = weights.n;
  for (long i = -m; i <= n; ++i) {
    const double e = innovations.draw(seed, path_index, static_cast<std::uint64_t>(i + m));
    acc.add(weights.at(i) * e);
  }
  return acc.sum / std::sqrt(weights.Bn2);
}

} // namespace belab

#ifndef BELAB_LINPROC_HPP
#define BELAB_LINPROC_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace belab {

// Coefficient sequences a_0..a_m of a causal linear process
// Y_k = sum_{j <= k} a_{k-j} e_j.
enum class CoeffKind { farima, power_law, finite };

struct CoefficientSeq {
  CoeffKind kind = CoeffKind::finite;
  std::vector<double> values;     // a_0 .. a_m
  double d = 0.0;                 // farima order
  double alpha = 0.0;             // tail decay exponent (power_law; 1-d for farima)
  double scale = 1.0;             // power_law amplitude
  double tail_exponent = 0.0;     // alpha, or 0 for finite
  double tail_mass_bound = 0.0;   // upper bound on sum_{i > m} a_i^2

  long truncation() const { return static_cast<long>(values.size()) - 1; }
  // Coefficient with implicit zero extension past the stored range (exact
  // for the finite kind; the analytic kinds must be built long enough).
  double at(long i) const;
  // Upper bound on sum_{i > k} a_i^2 via the integral tail bound.
  double tail_sq_mass(long k) const;
};

enum class MemoryClass { long_memory, short_memory, short_degenerate };

std::string memory_class_name(MemoryClass mc);

// Fractional-difference coefficients a_0 = 1, a_i = a_{i-1} (i-1+d)/i for
// 0 < d < 1/2, computed by the exact ratio recursion (no Gamma evaluations).
CoefficientSeq farima_coefficients(double d, long m);

// a_0 = 1, a_i = scale * i^-alpha for 1/2 < alpha < 1 (slowly varying part
// taken constant).
CoefficientSeq power_law_coefficients(double alpha, double scale, long m);

CoefficientSeq finite_coefficients(std::vector<double> values);

MemoryClass classify_memory(const CoefficientSeq& coeffs);

// Weights of the normalized partial sum S_n / B_n over the truncated past
// i = -m..n:
//   b_{n,i} = sum_{j=0}^{n-i} a_j          for 0 < i <= n
//   b_{n,i} = sum_{j=1-i}^{n-i} a_j        for i <= 0
struct PartialSumWeights {
  long n = 0;
  long m = 0;                   // past-truncation depth, >= n
  std::vector<double> b;        // b[i + m] holds b_{n,i}
  double Bn2 = 0.0;             // sum of b^2 over the truncated index set
  double b_sup = 0.0;           // max |b_{n,i}|
  double d_rho = 1.0;
  double eps_n = 0.0;           // d_rho * b_sup / sqrt(Bn2)
  double tail_mass_bound = 0.0; // bound on the neglected sum_{i < -m} b^2

  double at(long i) const { return b[static_cast<std::size_t>(i + m)]; }
};

// O(n + m) construction via a single prefix-sum array of the coefficients.
PartialSumWeights partial_sum_weights(const CoefficientSeq& coeffs, long n, long m, double d_rho);

// Unit-variance innovation laws for driving the linear process.
struct Innovations {
  enum class Kind { rademacher, two_point, zero };
  Kind kind = Kind::rademacher;
  double up = 1.0;
  double down = -1.0;
  double p_up = 0.5;

  static Innovations rademacher();
  // Asymmetric mean-zero unit-variance two-point law, skew in (-1, 1).
  static Innovations skewed(double skew);
  // General two-point law; rejects mean != 0 or variance != 1.
  static Innovations two_point(double up, double down, double p_up);
  // Degenerate all-zero stream (test hook).
  static Innovations zero();

  double draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) const;
};

// One path of S_n / B_n over the truncated past; pure in (seed, path_index).
double simulate_normalized_sum(const PartialSumWeights& weights, const Innovations& innovations,
                               std::uint64_t seed, std::uint64_t path_index);

} // namespace belab

#endif

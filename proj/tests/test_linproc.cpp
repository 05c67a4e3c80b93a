#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "belab/io.hpp"
#include "belab/linproc.hpp"
#include "belab/montecarlo.hpp"
#include "belab/rates.hpp"

using namespace belab;

TEST_CASE("fractional coefficients: normalization and first coefficient") {
  const CoefficientSeq seq = farima_coefficients(0.25, 16);
  CHECK(seq.values[0] == 1.0);
  for (double d : {0.05, 0.25, 0.45}) {
    CHECK(farima_coefficients(d, 4).values[1] == doctest::Approx(d).epsilon(1e-15));
  }
}

TEST_CASE("fractional coefficients match a high-precision Gamma oracle") {
  const double d = 0.31;
  const CoefficientSeq seq = farima_coefficients(d, 2000);
  for (long i : {1L, 2L, 5L, 17L, 100L, 1000L, 2000L}) {
    // a_i = Gamma(i+d) / (Gamma(d) Gamma(i+1)), evaluated in extended precision.
    const long double oracle = std::exp(std::lgamma(static_cast<long double>(i) + d) -
                                        std::lgamma(static_cast<long double>(d)) -
                                        std::lgamma(static_cast<long double>(i) + 1.0L));
    CHECK(seq.at(i) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));
  }
}

TEST_CASE("fractional coefficients approach the power-law limit") {
  // a_i * i^{1-d} converges to 1/Gamma(d); at i = 1e6 the remaining bias is
  // below 1e-7 relative for d = 0.25.
  const long m = 1000000;
  const CoefficientSeq seq = farima_coefficients(0.25, m);
  const double limit = 1.0 / std::tgamma(0.25);
  CHECK(limit == doctest::Approx(0.27582).epsilon(1e-4));
  CHECK(seq.at(m) * std::pow(static_cast<double>(m), 0.75) ==
        doctest::Approx(limit).epsilon(2e-7));
}

TEST_CASE("power-law coefficients") {
  const CoefficientSeq seq = power_law_coefficients(0.75, 1.0, 8);
  CHECK(seq.values[0] == 1.0);
  CHECK(seq.at(4) == doctest::Approx(std::pow(4.0, -0.75)).epsilon(1e-15));
  CHECK(seq.at(4) == doctest::Approx(0.353553).epsilon(1e-5));
  // non-summable: block sums do not vanish
  const CoefficientSeq longer = power_law_coefficients(0.75, 1.0, 4096);
  double block = 0.0;
  for (long i = 2048; i <= 4096; ++i) block += longer.at(i);
  CHECK(block > 0.05);
  CHECK(classify_memory(longer) == MemoryClass::long_memory);
}

TEST_CASE("parameter validation for coefficient builders") {
  CHECK_THROWS_AS(farima_coefficients(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(farima_coefficients(0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(farima_coefficients(0.25, 0), std::invalid_argument);
  CHECK_THROWS_AS(power_law_coefficients(0.5, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(power_law_coefficients(1.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(power_law_coefficients(0.75, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(finite_coefficients({}), std::invalid_argument);
}

TEST_CASE("memory classification of finite sequences") {
  CHECK(classify_memory(farima_coefficients(0.25, 8)) == MemoryClass::long_memory);
  CHECK(classify_memory(finite_coefficients({1.0})) == MemoryClass::short_memory);
  CHECK(classify_memory(finite_coefficients({1.0, -1.0})) == MemoryClass::short_degenerate);
  CHECK(classify_memory(finite_coefficients({1.0, -0.5, -0.5})) == MemoryClass::short_degenerate);
}

TEST_CASE("weights for the identity filter") {
  const PartialSumWeights w = partial_sum_weights(finite_coefficients({1.0}), 5, 5, 1.0);
  for (long i = 1; i <= 5; ++i) CHECK(w.at(i) == 1.0);
  for (long i = -5; i <= 0; ++i) CHECK(w.at(i) == 0.0);
  CHECK(w.Bn2 == 5.0);
  CHECK(w.b_sup == 1.0);
  CHECK(w.eps_n == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(w.tail_mass_bound == 0.0);

  const PartialSumWeights w2 = partial_sum_weights(finite_coefficients({1.0}), 5, 5, 2.5);
  CHECK(w2.eps_n == doctest::Approx(2.5 / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("weights for the differencing filter concentrate at the boundary") {
  const PartialSumWeights w = partial_sum_weights(finite_coefficients({1.0, -1.0}), 5, 5, 1.0);
  CHECK(w.at(5) == 1.0);   // b_{n,n} = a_0
  CHECK(w.at(0) == -1.0);  // b_{n,0} = sum_{j=1..5} a_j
  for (long i = 1; i < 5; ++i) CHECK(w.at(i) == 0.0);
  for (long i = -5; i < 0; ++i) CHECK(w.at(i) == 0.0);
  CHECK(w.Bn2 == 2.0);
}

TEST_CASE("prefix-sum weights equal direct summation") {
  const CoefficientSeq coeffs = farima_coefficients(0.3, 256);
  const long n = 48, m = 64;
  const PartialSumWeights w = partial_sum_weights(coeffs, n, m, 1.0);
  for (long i = -m; i <= n; ++i) {
    double direct = 0.0;
    const long j_lo = i >= 1 ? 0 : 1 - i;
    for (long j = j_lo; j <= n - i; ++j) direct += coeffs.at(j);
    CHECK(w.at(i) == doctest::Approx(direct).epsilon(1e-12));
  }
  // neighbor identity b_{n,i} = b_{n,i+1} + a_{n-i} - [i <= 0] a_{-i}
  for (long i = -m; i < n; ++i) {
    const double expect = w.at(i + 1) + coeffs.at(n - i) - (i <= 0 ? coeffs.at(-i) : 0.0);
    CHECK(w.at(i) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("weights validation") {
  const CoefficientSeq coeffs = farima_coefficients(0.25, 64);
  CHECK_THROWS_AS(partial_sum_weights(coeffs, 10, 9, 1.0), std::invalid_argument);   // m < n
  CHECK_THROWS_AS(partial_sum_weights(coeffs, 40, 40, 1.0), std::invalid_argument);  // too short
  CHECK_THROWS_AS(partial_sum_weights(coeffs, 10, 10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(partial_sum_weights(finite_coefficients({0.0}), 4, 4, 1.0),
                  std::invalid_argument);  // Bn2 = 0
}

TEST_CASE("variance growth of the fractional filter across two octaves") {
  auto bn2_at = [](long n) {
    const long m = 4 * n;
    return partial_sum_weights(farima_coefficients(0.25, n + m), n, m, 1.0).Bn2;
  };
  const double slope = std::log2(bn2_at(1L << 16) / bn2_at(1L << 12)) / 4.0;
  CHECK(slope >= 1.45);
  CHECK(slope <= 1.55);
}

TEST_CASE("scaling all coefficients leaves eps_n and the normalized sum invariant") {
  const double lambda = 3.0;
  const CoefficientSeq base = farima_coefficients(0.25, 96);
  std::vector<double> scaled_values(base.values);
  for (double& v : scaled_values) v *= lambda;
  const CoefficientSeq scaled = finite_coefficients(scaled_values);
  const CoefficientSeq plain = finite_coefficients(base.values);

  const PartialSumWeights w1 = partial_sum_weights(plain, 32, 64, 1.0);
  const PartialSumWeights w2 = partial_sum_weights(scaled, 32, 64, 1.0);
  CHECK(w2.b_sup == doctest::Approx(lambda * w1.b_sup).epsilon(1e-12));
  CHECK(w2.Bn2 == doctest::Approx(lambda * lambda * w1.Bn2).epsilon(1e-12));
  CHECK(w2.eps_n == doctest::Approx(w1.eps_n).epsilon(1e-12));
  const double s1 = simulate_normalized_sum(w1, Innovations::rademacher(), 9, 4);
  const double s2 = simulate_normalized_sum(w2, Innovations::rademacher(), 9, 4);
  CHECK(s2 == doctest::Approx(s1).epsilon(1e-12));
}

TEST_CASE("single-step simulation returns a sign; zero innovations return zero") {
  const PartialSumWeights w = partial_sum_weights(finite_coefficients({1.0}), 1, 1, 1.0);
  const double v = simulate_normalized_sum(w, Innovations::rademacher(), 11, 0);
  CHECK(std::fabs(v) == 1.0);
  CHECK(simulate_normalized_sum(w, Innovations::zero(), 11, 0) == 0.0);
}

TEST_CASE("normalized sums have unit sample variance") {
  const long n = 256, m = 4 * n;
  const PartialSumWeights w =
      partial_sum_weights(farima_coefficients(0.25, n + m), n, m, 1.0);
  const long paths = 100000;
  const std::vector<double> sums = collect_normalized_sums(w, Innovations::rademacher(), paths, 515, 2);
  double mean = 0.0;
  for (double v : sums) mean += v;
  mean /= static_cast<double>(paths);
  double var = 0.0;
  for (double v : sums) var += (v - mean) * (v - mean);
  var /= static_cast<double>(paths - 1);
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));
  // the reported truncation-bias bound is small relative to Bn2
  CHECK(w.tail_mass_bound / w.Bn2 < 1.0);
}

TEST_CASE("skewed innovations are mean-zero unit-variance; bad laws are rejected") {
  const Innovations inn = Innovations::skewed(0.5);
  const double mean = inn.p_up * inn.up + (1.0 - inn.p_up) * inn.down;
  const double var = inn.p_up * inn.up * inn.up + (1.0 - inn.p_up) * inn.down * inn.down;
  CHECK(std::fabs(mean) <= 1e-15);
  CHECK(var == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(Innovations::two_point(2.0, -2.0, 0.5), std::invalid_argument);   // variance 4
  CHECK_THROWS_AS(Innovations::two_point(1.0, -0.5, 0.5), std::invalid_argument);   // mean != 0
  CHECK_THROWS_AS(Innovations::skewed(1.0), std::invalid_argument);
}

TEST_CASE("coefficient and weight tables export as index,value CSV") {
  const CoefficientSeq coeffs = finite_coefficients({1.0, -0.25});
  const std::string coeff_csv = coefficients_csv(coeffs);
  CHECK(coeff_csv == "index,value\n0,1\n1,-0.25\n");
  const PartialSumWeights w = partial_sum_weights(coeffs, 1, 1, 1.0);
  const std::string w_csv = weights_csv(w);
  CHECK(w_csv.substr(0, 12) == "index,value\n");
  CHECK(w_csv.find("\n1,1\n") != std::string::npos);  // b_{1,1} = a_0
  const nlohmann::json summary = weights_summary_to_json(w);
  CHECK(summary.at("n") == 1);
  CHECK(summary.at("m") == 1);
  CHECK(summary.at("Bn2").get<double>() == w.Bn2);
  CHECK(summary.contains("eps_n"));
  CHECK(summary.contains("tail_mass_bound"));
}

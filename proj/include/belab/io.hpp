#ifndef BELAB_IO_HPP
#define BELAB_IO_HPP

#include <string>

#include <json.hpp>

#include "belab/dist.hpp"
#include "belab/enlarge.hpp"
#include "belab/linproc.hpp"
#include "belab/model.hpp"
#include "belab/rates.hpp"

namespace belab {

// Model descriptors: {kind, n, rho, eta, delta, skew}.
nlohmann::json model_to_json(const MdsModel& model);
MdsModel model_from_json(const nlohmann::json& j);

// Distance results: {method, n, N, d, band, argsup}.
nlohmann::json distance_to_json(const KolmogorovResult& result, long n);

// Weight summaries: {n, m, Bn2, b_sup, eps_n, tail_mass_bound}.
nlohmann::json weights_summary_to_json(const PartialSumWeights& weights);

// Enlargement summaries: {n, tau, r, epsilon, residual_step, N}.
nlohmann::json enlargement_to_json(const EnlargedSequence& seq, long n);

// Fits: {slope, intercept, r2, c_hat}.
nlohmann::json fit_to_json(const RateFit& fit, double c_hat);

// Tables as CSV with columns: index, value.
std::string coefficients_csv(const CoefficientSeq& coeffs);
std::string weights_csv(const PartialSumWeights& weights);

// Rate table as CSV with columns: n, d, band, sqrt_n_d. `bands` must match
// the fit's point count (zeros for exact methods).
std::string rate_table_csv(const RateFit& fit, const std::vector<double>& bands);

// Shortest round-trip decimal representation.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace belab

#endif

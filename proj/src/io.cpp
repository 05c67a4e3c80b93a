#include "belab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace belab {

nlohmann::json model_to_json(const MdsModel& model) {
  return nlohmann::json{{"kind", mds_kind_name(model.kind)}, {"n", model.n},
                        {"rho", model.rho},                  {"eta", model.eta},
                        {"delta", model.delta},              {"skew", model.skew}};
}

MdsModel model_from_json(const nlohmann::json& j) {
  MdsModel model;
  model.kind = mds_kind_from_name(j.at("kind").get<std::string>());
  model.n = j.value("n", 1L);
  model.rho = j.value("rho", 1.0);
  model.eta = j.value("eta", 0.0);
  model.delta = j.value("delta", 0.0);
  model.skew = j.value("skew", 0.0);
  return model;
}

nlohmann::json distance_to_json(const KolmogorovResult& result, long n) {
  return nlohmann::json{{"method", distance_method_name(result.method)},
                        {"n", n},
                        {"N", result.sample_size},
                        {"d", result.d},
                        {"band", result.dkw_band},
                        {"argsup", result.argsup}};
}

nlohmann::json weights_summary_to_json(const PartialSumWeights& weights) {
  return nlohmann::json{{"n", weights.n},         {"m", weights.m},
                        {"Bn2", weights.Bn2},     {"b_sup", weights.b_sup},
                        {"eps_n", weights.eps_n}, {"tail_mass_bound", weights.tail_mass_bound}};
}

nlohmann::json enlargement_to_json(const EnlargedSequence& seq, long n) {
  return nlohmann::json{{"n", n},
                        {"tau", seq.tau},
                        {"r", seq.r},
                        {"epsilon", seq.pad_scale},
                        {"residual_step", seq.residual_step},
                        {"N", seq.N}};
}

nlohmann::json fit_to_json(const RateFit& fit, double c_hat) {
  return nlohmann::json{
      {"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}, {"c_hat", c_hat}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string coefficients_csv(const CoefficientSeq& coeffs) {
  std::string csv = "index,value\n";
  for (long i = 0; i <= coeffs.truncation(); ++i)
    csv += std::to_string(i) + "," + format_double(coeffs.at(i)) + "\n";
  return csv;
}

std::string weights_csv(const PartialSumWeights& weights) {
  std::string csv = "index,value\n";
  for (long i = -weights.m; i <= weights.n; ++i)
    csv += std::to_string(i) + "," + format_double(weights.at(i)) + "\n";
  return csv;
}

std::string rate_table_csv(const RateFit& fit, const std::vector<double>& bands) {
  if (bands.size() != fit.points.size())
    throw std::invalid_argument("rate_table_csv: bands must match the point count");
  std::string csv = "n,d,band,sqrt_n_d\n";
  for (std::size_t i = 0; i < fit.points.size(); ++i) {
    csv += format_double(fit.points[i].first) + "," + format_double(fit.points[i].second) + "," +
           format_double(bands[i]) + "," + format_double(fit.scaled[i].second) + "\n";
  }
  return csv;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace belab

#ifndef BELAB_EXPERIMENT_HPP
#define BELAB_EXPERIMENT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "belab/dist.hpp"

namespace belab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { martingale_rate, linproc_rate, enlargement_check, functionals };

std::string experiment_kind_name(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::martingale_rate;
  nlohmann::json model;             // model or process descriptor (see README)
  std::vector<long> n_grid;
  long paths = 10000;               // Monte Carlo paths, or cases for enlargement-check
  std::uint64_t seed = 1;
  double p = 1.0;                   // moment exponent for the functionals experiment
  double d_rho = 1.0;
  int workers = 0;                  // 0 = BELAB_WORKERS env or hardware concurrency
  double past_multiplier = 4.0;     // linear-process truncation depth m = multiplier * n
  std::string output_dir = "out";
  bool delta_inv_sqrt_n = false;    // tilted model with delta = n^{-1/2} per grid point
};

// Parses and validates a config document; throws ConfigError with a message
// suitable for the CLI's error JSON.
ExperimentConfig parse_config(const nlohmann::json& j);

struct ExperimentRow {
  long n = 0;
  DistanceMethod method = DistanceMethod::monte_carlo;
  long sample_size = 0;   // 0 for exact methods
  double d = 0.0;
  double dkw_band = 0.0;  // 0 for exact methods
  double sqrt_n_d = 0.0;
  double eps_n = 0.0;
  double delta_n = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double c_hat = 0.0;
  // enlargement-check summary
  long cases = 0;
  double max_bracket_deviation = 0.0;
  long violations = 0;
  std::vector<std::string> files;  // artifacts written, relative to output_dir
};

// Runs the experiment and writes the report bundle into config.output_dir.
// Outputs are a pure function of (config, seed), independent of the worker
// count. Throws ConfigError / std::runtime_error on failure.
ExperimentResult run_experiment(const ExperimentConfig& config);

} // namespace belab

#endif

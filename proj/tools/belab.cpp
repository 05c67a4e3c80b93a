#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "belab/dist.hpp"
#include "belab/experiment.hpp"
#include "belab/io.hpp"

namespace {

int fail_with_json(const std::string& kind, const std::string& message) {
  nlohmann::json err{{"error", kind}, {"detail", message}};
  std::cerr << err.dump() << "\n";
  return 1;
}

int cmd_run(const std::string& config_path, int workers_override, long long seed_override,
            bool seed_set, const std::string& out_override) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(belab::read_text_file(config_path));
  } catch (const std::exception& e) {
    return fail_with_json("invalid-config", e.what());
  }
  try {
    belab::ExperimentConfig config = belab::parse_config(doc);
    if (workers_override > 0) config.workers = workers_override;
    if (seed_set) config.seed = static_cast<std::uint64_t>(seed_override);
    if (!out_override.empty()) config.output_dir = out_override;
    const belab::ExperimentResult result = belab::run_experiment(config);
    nlohmann::json summary{{"output_dir", config.output_dir}, {"files", result.files}};
    if (!result.rows.empty()) {
      summary["slope"] = result.slope;
      summary["c_hat"] = result.c_hat;
    }
    if (config.experiment == belab::ExperimentKind::enlargement_check) {
      summary["max_abs_bracket_deviation"] = result.max_bracket_deviation;
      summary["violations"] = result.violations;
    }
    std::cout << summary.dump(2) << "\n";
    return 0;
  } catch (const belab::ConfigError& e) {
    return fail_with_json("invalid-config", e.what());
  } catch (const std::exception& e) {
    return fail_with_json("run-failed", e.what());
  }
}

int cmd_oracle_rademacher(long n) {
  try {
    const belab::KolmogorovResult result = belab::exact_rademacher_distance(n);
    std::cout << belab::distance_to_json(result, n).dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    return fail_with_json("oracle-failed", e.what());
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"belab: martingale normal-approximation rate laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  int workers = 0;
  long long seed = 0;
  std::string out_dir;
  CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "experiment config file")->required();
  CLI::Option* workers_opt =
      run->add_option("--workers", workers, "worker thread count")->envname("BELAB_WORKERS");
  CLI::Option* seed_opt = run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_dir, "override the output directory");

  long oracle_n = 0;
  CLI::App* oracle = app.add_subcommand("oracle", "closed-form reference values");
  CLI::App* rademacher = oracle->add_subcommand("rademacher", "exact sign-walk distance");
  rademacher->add_option("--n", oracle_n, "horizon")->required();
  oracle->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    const int workers_override = workers_opt->count() || std::getenv("BELAB_WORKERS") ? workers : 0;
    return cmd_run(config_path, workers_override, seed, seed_opt->count() > 0, out_dir);
  }
  if (oracle->parsed() && rademacher->parsed()) return cmd_oracle_rademacher(oracle_n);
  return 0;
}

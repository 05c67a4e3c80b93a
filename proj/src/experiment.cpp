#include "belab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "belab/enlarge.hpp"
#include "belab/io.hpp"
#include "belab/linproc.hpp"
#include "belab/montecarlo.hpp"
#include "belab/rates.hpp"
#include "belab/rng.hpp"
#include "belab/svg.hpp"

namespace belab {

namespace {

ExperimentKind experiment_kind_from_name(const std::string& name) {
  if (name == "martingale-rate") return ExperimentKind::martingale_rate;
  if (name == "linproc-rate") return ExperimentKind::linproc_rate;
  if (name == "enlargement-check") return ExperimentKind::enlargement_check;
  if (name == "functionals") return ExperimentKind::functionals;
  throw ConfigError("unknown experiment: " + name);
}

bool is_mds_experiment(ExperimentKind kind) {
  return kind == ExperimentKind::martingale_rate || kind == ExperimentKind::functionals;
}

MdsModel mds_model_for_n(const ExperimentConfig& config, long n) {
  MdsModel model = model_from_json(config.model);
  model.n = n;
  if (config.delta_inv_sqrt_n) model.delta = 1.0 / std::sqrt(static_cast<double>(n));
  model.validate();
  return model;
}

CoefficientSeq process_for_depth(const ExperimentConfig& config, long depth) {
  const std::string kind = config.model.at("kind").get<std::string>();
  if (kind == "farima") return farima_coefficients(config.model.at("d").get<double>(), depth);
  if (kind == "power-law")
    return power_law_coefficients(config.model.at("alpha").get<double>(),
                                  config.model.value("scale", 1.0), depth);
  if (kind == "finite")
    return finite_coefficients(config.model.at("values").get<std::vector<double>>());
  throw ConfigError("unknown process kind: " + kind);
}

Innovations innovations_from_config(const ExperimentConfig& config) {
  if (!config.model.contains("innovations")) return Innovations::rademacher();
  const nlohmann::json& j = config.model.at("innovations");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rademacher") return Innovations::rademacher();
  if (kind == "skewed") return Innovations::skewed(j.at("skew").get<double>());
  throw ConfigError("unknown innovations kind: " + kind);
}

bool needs_monte_carlo(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::linproc_rate:
    case ExperimentKind::functionals:
      return true;
    case ExperimentKind::enlargement_check:
      return false;
    case ExperimentKind::martingale_rate: {
      const MdsKind kind = mds_kind_from_name(config.model.at("kind").get<std::string>());
      if (kind == MdsKind::scaled_rademacher) return false;
      for (long n : config.n_grid)
        if (n > 20) return true;
      return false;
    }
  }
  return true;
}

nlohmann::json config_echo(const ExperimentConfig& config, int resolved_workers) {
  nlohmann::json echo{{"experiment", experiment_kind_name(config.experiment)},
                      {"model", config.model},
                      {"n_grid", config.n_grid},
                      {"paths", config.paths},
                      {"seed", config.seed},
                      {"p", config.p},
                      {"d_rho", config.d_rho},
                      {"workers", resolved_workers},
                      {"past_multiplier", config.past_multiplier},
                      {"output_dir", config.output_dir}};
  if (config.delta_inv_sqrt_n) echo["model"]["delta"] = "inv-sqrt-n";
  return echo;
}

std::string rates_csv(const std::vector<ExperimentRow>& rows, std::uint64_t seed) {
  std::string csv = "# seed=" + std::to_string(seed) + "\n";
  csv += "n,method,M,D,dkw_band,sqrt_n_D,eps_n,delta_n\n";
  for (const ExperimentRow& row : rows) {
    csv += std::to_string(row.n) + "," + distance_method_name(row.method) + "," +
           std::to_string(row.sample_size) + "," + format_double(row.d) + "," +
           format_double(row.dkw_band) + "," + format_double(row.sqrt_n_d) + "," +
           format_double(row.eps_n) + "," + format_double(row.delta_n) + "\n";
  }
  return csv;
}

struct Bundle {
  std::filesystem::path dir;
  std::vector<std::string>* files;
  void write(const std::string& name, const std::string& content) {
    write_text_file((dir / name).string(), content);
    files->push_back(name);
  }
};

void fit_and_plot(const ExperimentConfig& config, ExperimentResult& result, Bundle& bundle,
                  const std::string& title) {
  std::vector<std::pair<double, double>> points;
  std::vector<double> d_series, eps_series, delta_series;
  for (const ExperimentRow& row : result.rows) {
    if (!(row.d > 0.0))
      throw ConfigError("distance is zero at n=" + std::to_string(row.n) +
                        "; cannot enter a log fit");
    points.emplace_back(static_cast<double>(row.n), row.d);
    d_series.push_back(row.d);
    eps_series.push_back(row.eps_n);
    delta_series.push_back(row.delta_n);
  }
  const RateFit fit = fit_loglog(points);
  result.slope = fit.slope;
  result.intercept = fit.intercept;
  result.r2 = fit.r2;
  result.c_hat = tightness_constant(d_series, eps_series, delta_series);

  nlohmann::json fit_json = fit_to_json(fit, result.c_hat);
  fit_json["seed"] = config.seed;
  bundle.write("fit.json", fit_json.dump(2) + "\n");

  SvgSeries measured{"measured D", "#1f77b4", true, {}};
  SvgSeries bound{"c_hat * (eps_n + delta_n)", "#d62728", false, {}};
  const std::vector<double> curve = bound_curve(eps_series, delta_series, result.c_hat);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    measured.points.emplace_back(static_cast<double>(result.rows[i].n), result.rows[i].d);
    bound.points.emplace_back(static_cast<double>(result.rows[i].n), curve[i]);
  }
  bundle.write("plot.svg", render_loglog_svg(title, "n", "Kolmogorov distance",
                                             {measured, bound},
                                             "seed=" + std::to_string(config.seed)));
}

void run_martingale_rate(const ExperimentConfig& config, int workers, ExperimentResult& result,
                         Bundle& bundle) {
  for (long n : config.n_grid) {
    const MdsModel model = mds_model_for_n(config, n);
    KolmogorovResult dist;
    if (model.kind == MdsKind::scaled_rademacher) {
      dist = exact_rademacher_distance(n);
    } else if (n <= 20) {
      dist = enumerate_model_distance(model);
    } else {
      dist = kolmogorov_distance(collect_terminal_values(model, config.paths, config.seed, workers));
    }
    const ConditionReport report = condition_report(model);
    result.rows.push_back({n, dist.method, dist.sample_size, dist.d, dist.dkw_band,
                           std::sqrt(static_cast<double>(n)) * dist.d, report.epsilon_n,
                           report.delta_n});
  }
  fit_and_plot(config, result, bundle, "martingale-rate: " + config.model.at("kind").get<std::string>());
}

void run_linproc_rate(const ExperimentConfig& config, int workers, ExperimentResult& result,
                      Bundle& bundle) {
  const Innovations innovations = innovations_from_config(config);
  nlohmann::json summaries = nlohmann::json::array();
  for (long n : config.n_grid) {
    const long m = std::max(n, static_cast<long>(std::llround(config.past_multiplier * static_cast<double>(n))));
    const CoefficientSeq coeffs = process_for_depth(config, n + m);
    const PartialSumWeights weights = partial_sum_weights(coeffs, n, m, config.d_rho);
    summaries.push_back(weights_summary_to_json(weights));
    const KolmogorovResult dist = kolmogorov_distance(
        collect_normalized_sums(weights, innovations, config.paths, config.seed, workers));
    // Independent innovations: the conditional variance of the normalized sum
    // is deterministic, so delta_n = 0 and eps_n comes from the weights.
    result.rows.push_back({n, dist.method, dist.sample_size, dist.d, dist.dkw_band,
                           std::sqrt(static_cast<double>(n)) * dist.d, weights.eps_n, 0.0});
  }
  bundle.write("weights.json", summaries.dump(2) + "\n");
  fit_and_plot(config, result, bundle, "linproc-rate: " + config.model.at("kind").get<std::string>());
}

void run_functionals(const ExperimentConfig& config, int workers, ExperimentResult& result,
                     Bundle& bundle) {
  std::string csv = "# seed=" + std::to_string(config.seed) + "\n";
  csv += "n,p,moment_bracket,moment_max,combined\n";
  for (long n : config.n_grid) {
    const MdsModel model = mds_model_for_n(config, n);
    const std::vector<PathStats> stats = collect_path_stats(model, config.paths, config.seed, workers);
    const MomentFunctionals f = moment_functionals(stats, config.p);
    csv += std::to_string(n) + "," + format_double(config.p) + "," +
           format_double(f.moment_bracket) + "," + format_double(f.moment_max) + "," +
           format_double(f.combined) + "\n";

    KolmogorovResult dist;
    if (model.kind == MdsKind::scaled_rademacher) {
      dist = exact_rademacher_distance(n);
    } else {
      std::vector<double> terminals(stats.size());
      for (std::size_t i = 0; i < stats.size(); ++i) terminals[i] = stats[i].x_n;
      dist = kolmogorov_distance(std::move(terminals));
    }
    const ConditionReport report = condition_report(model);
    result.rows.push_back({n, dist.method, dist.sample_size, dist.d, dist.dkw_band,
                           std::sqrt(static_cast<double>(n)) * dist.d, report.epsilon_n,
                           report.delta_n});
  }
  bundle.write("functionals.csv", csv);
  fit_and_plot(config, result, bundle, "functionals: " + config.model.at("kind").get<std::string>());
}

void run_enlargement_check(const ExperimentConfig& config, ExperimentResult& result,
                           Bundle& bundle) {
  std::string csv = "# seed=" + std::to_string(config.seed) + "\n";
  csv += "case,n,tau,r,epsilon,residual_step,N,bracket_N\n";
  result.cases = config.paths;
  for (long k = 0; k < config.paths; ++k) {
    const std::uint64_t case_seed = rng_derive_seed(config.seed, static_cast<std::uint64_t>(k));
    const long n = 1 + static_cast<long>(rng_bits(case_seed, 1, 0) % 64);
    std::vector<double> bracket(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      acc += rng_uniform01(case_seed, 2, static_cast<std::uint64_t>(i)) * 2.2 /
             static_cast<double>(n);
      bracket[static_cast<std::size_t>(i)] = acc;
    }
    const double epsilon = 0.02 + 0.48 * rng_uniform01(case_seed, 3, 0);
    const EnlargedSequence seq = enlarge_to_unit_variance(bracket, epsilon, case_seed);

    const double deviation = std::fabs(seq.bracket_N - 1.0);
    result.max_bracket_deviation = std::max(result.max_bracket_deviation, deviation);
    const long r_bound = static_cast<long>(std::floor(1.0 / (epsilon * epsilon)));
    bool ok = seq.r <= r_bound && seq.residual_step >= 0.0 && seq.residual_step < epsilon &&
              seq.N == n + seq.r + 1;
    for (double pad : seq.pad) ok = ok && std::fabs(pad) <= epsilon;
    if (!ok) ++result.violations;

    csv += std::to_string(k) + "," + std::to_string(n) + "," + std::to_string(seq.tau) + "," +
           std::to_string(seq.r) + "," + format_double(epsilon) + "," +
           format_double(seq.residual_step) + "," + std::to_string(seq.N) + "," +
           format_double(seq.bracket_N) + "\n";
  }
  bundle.write("cases.csv", csv);
  nlohmann::json summary{{"cases", result.cases},
                         {"max_abs_bracket_deviation", result.max_bracket_deviation},
                         {"violations", result.violations},
                         {"seed", config.seed}};
  bundle.write("enlargement.json", summary.dump(2) + "\n");
}

} // namespace

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::martingale_rate: return "martingale-rate";
    case ExperimentKind::linproc_rate: return "linproc-rate";
    case ExperimentKind::enlargement_check: return "enlargement-check";
    case ExperimentKind::functionals: return "functionals";
  }
  throw ConfigError("unknown experiment kind");
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig config;
  try {
    config.experiment = experiment_kind_from_name(j.at("experiment").get<std::string>());
    if (j.contains("model")) config.model = j.at("model");
    if (j.contains("n_grid")) config.n_grid = j.at("n_grid").get<std::vector<long>>();
    config.paths = j.value("paths", config.paths);
    config.seed = j.value("seed", config.seed);
    config.p = j.value("p", config.p);
    config.d_rho = j.value("d_rho", config.d_rho);
    config.workers = j.value("workers", config.workers);
    config.past_multiplier = j.value("past_multiplier", config.past_multiplier);
    config.output_dir = j.value("output_dir", config.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  // A tilted model may request delta = n^{-1/2} per grid point.
  if (config.model.is_object() && config.model.contains("delta") &&
      config.model.at("delta").is_string()) {
    const std::string mode = config.model.at("delta").get<std::string>();
    if (mode != "inv-sqrt-n") throw ConfigError("unknown delta mode: " + mode);
    config.delta_inv_sqrt_n = true;
    config.model["delta"] = 0.0;
  }

  if (config.experiment != ExperimentKind::enlargement_check) {
    if (!config.model.is_object() || !config.model.contains("kind"))
      throw ConfigError("config requires a model object with a kind");
    if (config.n_grid.size() < 3)
      throw ConfigError("rate experiments need an n_grid with at least 3 points");
    for (std::size_t i = 1; i < config.n_grid.size(); ++i)
      if (config.n_grid[i] <= config.n_grid[i - 1])
        throw ConfigError("n_grid must be strictly increasing");
    if (config.n_grid.front() < 1) throw ConfigError("n_grid entries must be >= 1");
  }
  if (config.paths < 1) throw ConfigError("paths must be >= 1");
  if (!(config.p >= 1.0)) throw ConfigError("p must be >= 1");
  if (!(config.d_rho > 0.0)) throw ConfigError("d_rho must be > 0");
  if (!(config.past_multiplier >= 1.0)) throw ConfigError("past_multiplier must be >= 1");
  if (config.output_dir.empty()) throw ConfigError("output_dir must be non-empty");

  // Validate the model descriptor up front so errors surface before any work.
  if (is_mds_experiment(config.experiment)) {
    try {
      mds_model_for_n(config, config.n_grid.front());
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid model: ") + e.what());
    }
  } else if (config.experiment == ExperimentKind::linproc_rate) {
    try {
      process_for_depth(config, std::max(2L, config.n_grid.front()));
      innovations_from_config(config);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid process: ") + e.what());
    }
  }
  if (needs_monte_carlo(config) && config.paths < 1000)
    throw ConfigError("Monte Carlo experiments require paths >= 1000");
  return config;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const int workers = resolve_workers(config.workers);
  std::filesystem::create_directories(config.output_dir);

  ExperimentResult result;
  Bundle bundle{config.output_dir, &result.files};
  bundle.write("config-echo.json", config_echo(config, workers).dump(2) + "\n");

  switch (config.experiment) {
    case ExperimentKind::martingale_rate:
      run_martingale_rate(config, workers, result, bundle);
      break;
    case ExperimentKind::linproc_rate:
      run_linproc_rate(config, workers, result, bundle);
      break;
    case ExperimentKind::functionals:
      run_functionals(config, workers, result, bundle);
      break;
    case ExperimentKind::enlargement_check:
      run_enlargement_check(config, result, bundle);
      return result;
  }
  bundle.write("rates.csv", rates_csv(result.rows, config.seed));
  return result;
}

} // namespace belab

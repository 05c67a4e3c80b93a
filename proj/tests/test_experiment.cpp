#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "belab/experiment.hpp"
#include "belab/montecarlo.hpp"
#include "belab/io.hpp"

using namespace belab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "belab_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

nlohmann::json base_exact_config(const std::string& out) {
  return nlohmann::json{{"experiment", "martingale-rate"},
                        {"model", {{"kind", "scaled-rademacher"}, {"rho", 1.0}}},
                        {"n_grid", {256, 1024, 4096, 16384}},
                        {"paths", 2000},
                        {"seed", 20240},
                        {"output_dir", out}};
}

} // namespace

TEST_CASE("exact rate experiment writes the full bundle") {
  const fs::path dir = fresh_dir("exact");
  const ExperimentConfig config = parse_config(base_exact_config(dir.string()));
  const ExperimentResult result = run_experiment(config);

  CHECK(result.rows.size() == 4);
  for (const ExperimentRow& row : result.rows) {
    CHECK(row.method == DistanceMethod::exact_binomial);
    CHECK(row.sample_size == 0);
    CHECK(row.dkw_band == 0.0);
    CHECK(row.eps_n > 0.0);
    CHECK(row.delta_n == 0.0);
  }
  CHECK(result.slope >= -0.52);
  CHECK(result.slope <= -0.48);
  CHECK(result.c_hat > 0.0);
  for (const char* name : {"config-echo.json", "rates.csv", "fit.json", "plot.svg"})
    CHECK(fs::exists(dir / name));

  const std::string csv = read_text_file((dir / "rates.csv").string());
  CHECK(csv.find("# seed=20240\n") == 0);
  CHECK(csv.find("n,method,M,D,dkw_band,sqrt_n_D,eps_n,delta_n\n") != std::string::npos);
  CHECK(csv.find("exact-binomial") != std::string::npos);

  const nlohmann::json fit = nlohmann::json::parse(read_text_file((dir / "fit.json").string()));
  for (const char* key : {"slope", "intercept", "r2", "c_hat", "seed"}) CHECK(fit.contains(key));
}

TEST_CASE("reruns are byte-identical and independent of the worker count") {
  const fs::path dir_a = fresh_dir("repro_a");
  const fs::path dir_b = fresh_dir("repro_b");
  nlohmann::json doc{{"experiment", "martingale-rate"},
                     {"model", {{"kind", "tilted"}, {"rho", 1.0}, {"delta", 0.25}}},
                     {"n_grid", {24, 48, 96}},
                     {"paths", 4000},
                     {"seed", 5555},
                     {"workers", 1},
                     {"output_dir", dir_a.string()}};
  run_experiment(parse_config(doc));
  doc["workers"] = 3;
  doc["output_dir"] = dir_b.string();
  run_experiment(parse_config(doc));
  CHECK(read_text_file((dir_a / "rates.csv").string()) ==
        read_text_file((dir_b / "rates.csv").string()));
  CHECK(read_text_file((dir_a / "fit.json").string()) ==
        read_text_file((dir_b / "fit.json").string()));

  // run once more with identical settings: bytes must not drift
  const fs::path dir_c = fresh_dir("repro_c");
  doc["output_dir"] = dir_c.string();
  run_experiment(parse_config(doc));
  CHECK(read_text_file((dir_b / "rates.csv").string()) ==
        read_text_file((dir_c / "rates.csv").string()));
}

TEST_CASE("method selection: enumeration below 21 steps, monte carlo above") {
  const fs::path dir = fresh_dir("methods");
  const nlohmann::json doc{{"experiment", "martingale-rate"},
                           {"model", {{"kind", "tilted"}, {"rho", 1.0}, {"delta", 0.2}}},
                           {"n_grid", {8, 16, 64}},
                           {"paths", 3000},
                           {"seed", 99},
                           {"output_dir", dir.string()}};
  const ExperimentResult result = run_experiment(parse_config(doc));
  REQUIRE(result.rows.size() == 3);
  CHECK(result.rows[0].method == DistanceMethod::exact_enumeration);
  CHECK(result.rows[1].method == DistanceMethod::exact_enumeration);
  CHECK(result.rows[2].method == DistanceMethod::monte_carlo);
  CHECK(result.rows[2].sample_size == 3000);
  CHECK(result.rows[2].dkw_band > 0.0);
}

TEST_CASE("tilted delta can follow the grid") {
  const fs::path dir = fresh_dir("deltamode");
  const nlohmann::json doc{{"experiment", "martingale-rate"},
                           {"model", {{"kind", "tilted"}, {"rho", 1.0}, {"delta", "inv-sqrt-n"}}},
                           {"n_grid", {16, 64, 256}},
                           {"paths", 2000},
                           {"seed", 4242},
                           {"output_dir", dir.string()}};
  const ExperimentConfig config = parse_config(doc);
  CHECK(config.delta_inv_sqrt_n);
  const ExperimentResult result = run_experiment(config);
  CHECK(result.rows[0].delta_n == doctest::Approx(0.25 * std::sqrt(15.0 / 16.0)).epsilon(1e-12));
  CHECK(result.rows[1].delta_n == doctest::Approx(0.125 * std::sqrt(63.0 / 64.0)).epsilon(1e-12));
}

TEST_CASE("linear-process experiment writes weight summaries") {
  const fs::path dir = fresh_dir("linproc");
  const nlohmann::json doc{{"experiment", "linproc-rate"},
                           {"model", {{"kind", "farima"}, {"d", 0.25}}},
                           {"n_grid", {16, 32, 64}},
                           {"paths", 2000},
                           {"seed", 808},
                           {"past_multiplier", 4.0},
                           {"output_dir", dir.string()}};
  const ExperimentResult result = run_experiment(parse_config(doc));
  CHECK(result.rows.size() == 3);
  for (const ExperimentRow& row : result.rows) {
    CHECK(row.method == DistanceMethod::monte_carlo);
    CHECK(row.eps_n > 0.0);
    CHECK(row.delta_n == 0.0);
  }
  const nlohmann::json weights =
      nlohmann::json::parse(read_text_file((dir / "weights.json").string()));
  REQUIRE(weights.is_array());
  REQUIRE(weights.size() == 3);
  CHECK(weights[0].at("n") == 16);
  CHECK(weights[0].at("m") == 64);
  for (const char* key : {"Bn2", "b_sup", "eps_n", "tail_mass_bound"})
    CHECK(weights[0].contains(key));
}

TEST_CASE("enlargement experiment reports exact completion") {
  const fs::path dir = fresh_dir("enlarge");
  const nlohmann::json doc{{"experiment", "enlargement-check"},
                           {"paths", 1000},
                           {"seed", 31415},
                           {"output_dir", dir.string()}};
  const ExperimentResult result = run_experiment(parse_config(doc));
  CHECK(result.cases == 1000);
  CHECK(result.violations == 0);
  CHECK(result.max_bracket_deviation <= 1e-12);
  const nlohmann::json summary =
      nlohmann::json::parse(read_text_file((dir / "enlargement.json").string()));
  CHECK(summary.at("cases") == 1000);
  CHECK(summary.at("violations") == 0);
  CHECK(fs::exists(dir / "cases.csv"));
  CHECK_FALSE(fs::exists(dir / "rates.csv"));
}

TEST_CASE("functionals experiment writes the moment table") {
  const fs::path dir = fresh_dir("functionals");
  const nlohmann::json doc{{"experiment", "functionals"},
                           {"model", {{"kind", "scaled-rademacher"}, {"rho", 1.0}}},
                           {"n_grid", {16, 64, 256}},
                           {"paths", 1000},
                           {"p", 2.0},
                           {"seed", 2718},
                           {"output_dir", dir.string()}};
  const ExperimentResult result = run_experiment(parse_config(doc));
  CHECK(result.rows.size() == 3);
  const std::string csv = read_text_file((dir / "functionals.csv").string());
  CHECK(csv.find("n,p,moment_bracket,moment_max,combined\n") != std::string::npos);
  // exact D column for the sign walk even in the functionals experiment
  CHECK(result.rows[0].method == DistanceMethod::exact_binomial);
}

TEST_CASE("worker resolution prefers an explicit request, then the environment") {
  setenv("BELAB_WORKERS", "3", 1);
  CHECK(resolve_workers(2) == 2);
  CHECK(resolve_workers(0) == 3);
  unsetenv("BELAB_WORKERS");
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("model descriptors round-trip through JSON") {
  MdsModel model;
  model.kind = MdsKind::tilted;
  model.n = 128;
  model.rho = 0.5;
  model.delta = 0.3;
  const MdsModel back = model_from_json(model_to_json(model));
  CHECK(back.kind == model.kind);
  CHECK(back.n == model.n);
  CHECK(back.rho == model.rho);
  CHECK(back.eta == model.eta);
  CHECK(back.delta == model.delta);
  CHECK(back.skew == model.skew);
  CHECK_THROWS(model_from_json(nlohmann::json{{"kind", "bogus"}}));
}

TEST_CASE("rate tables export with bands and the scaled column") {
  const RateFit fit = fit_loglog({{4.0, 0.5}, {16.0, 0.25}, {64.0, 0.125}});
  const std::string csv = rate_table_csv(fit, {0.0, 0.0, 0.01});
  CHECK(csv.find("n,d,band,sqrt_n_d\n") == 0);
  CHECK(csv.find("4,0.5,0,1\n") != std::string::npos);
  CHECK(csv.find("64,0.125,0.01,1\n") != std::string::npos);
  CHECK_THROWS_AS(rate_table_csv(fit, {0.0}), std::invalid_argument);
}

TEST_CASE("config validation rejects malformed documents") {
  const std::string out = fresh_dir("invalid").string();
  auto expect_reject = [&](nlohmann::json doc) {
    doc["output_dir"] = out;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  };
  expect_reject({{"experiment", "nope"}});
  expect_reject({{"experiment", "martingale-rate"}});  // no model
  expect_reject({{"experiment", "martingale-rate"},
                 {"model", {{"kind", "scaled-rademacher"}}}});  // no n_grid
  expect_reject({{"experiment", "martingale-rate"},
                 {"model", {{"kind", "scaled-rademacher"}}},
                 {"n_grid", {64, 64, 128}}});  // not strictly increasing
  expect_reject({{"experiment", "martingale-rate"},
                 {"model", {{"kind", "tilted"}, {"delta", 0.9}}},
                 {"n_grid", {16, 64, 256}}});  // delta out of range
  expect_reject({{"experiment", "martingale-rate"},
                 {"model", {{"kind", "tilted"}, {"delta", 0.2}}},
                 {"n_grid", {16, 64, 256}},
                 {"paths", 100}});  // monte carlo with too few paths
  expect_reject({{"experiment", "linproc-rate"},
                 {"model", {{"kind", "farima"}, {"d", 0.8}}},
                 {"n_grid", {16, 64, 256}},
                 {"paths", 2000}});  // d out of range
  expect_reject({{"experiment", "martingale-rate"},
                 {"model", {{"kind", "scaled-rademacher"}, {"delta", "sqrt-n"}}},
                 {"n_grid", {16, 64, 256}}});  // unknown delta mode
}

#ifdef BELAB_BIN
TEST_CASE("command line round trip") {
  const fs::path dir = fresh_dir("cli");
  const fs::path config_path = dir / "config.json";
  nlohmann::json doc = base_exact_config((dir / "out").string());
  write_text_file(config_path.string(), doc.dump(2));

  const std::string cmd = std::string(BELAB_BIN) + " run --config " + config_path.string() +
                          " > " + (dir / "stdout.json").string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "out" / "rates.csv"));
  const nlohmann::json summary =
      nlohmann::json::parse(read_text_file((dir / "stdout.json").string()));
  CHECK(summary.contains("slope"));

  // --out and --seed overrides land in the echoed config and the CSV header
  const std::string cmd2 = std::string(BELAB_BIN) + " run --config " + config_path.string() +
                           " --out " + (dir / "alt").string() + " --seed 777 > /dev/null";
  CHECK(std::system(cmd2.c_str()) == 0);
  CHECK(fs::exists(dir / "alt" / "rates.csv"));
  const nlohmann::json echo =
      nlohmann::json::parse(read_text_file((dir / "alt" / "config-echo.json").string()));
  CHECK(echo.at("seed") == 777);
  CHECK(read_text_file((dir / "alt" / "rates.csv").string()).find("# seed=777\n") == 0);

  // invalid config exits non-zero and emits an error JSON on stderr
  write_text_file(config_path.string(), "{\"experiment\": \"nope\"}");
  const std::string cmd3 = std::string(BELAB_BIN) + " run --config " + config_path.string() +
                           " 2> " + (dir / "stderr.json").string() + " > /dev/null";
  CHECK(std::system(cmd3.c_str()) != 0);
  const nlohmann::json err = nlohmann::json::parse(read_text_file((dir / "stderr.json").string()));
  CHECK(err.contains("error"));

  // oracle subcommand prints a distance document
  const std::string cmd4 = std::string(BELAB_BIN) + " oracle rademacher --n 4 > " +
                           (dir / "oracle.json").string();
  CHECK(std::system(cmd4.c_str()) == 0);
  const nlohmann::json oracle = nlohmann::json::parse(read_text_file((dir / "oracle.json").string()));
  CHECK(oracle.at("d").get<double>() == 0.1875);
  CHECK(oracle.at("method") == "exact-binomial");
  CHECK(oracle.at("n") == 4);
}
#endif

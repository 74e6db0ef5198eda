#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "olsim/analysis.hpp"
#include "olsim/olsim.hpp"

namespace {

using olsim::AlgorithmConfig;
using olsim::AlgorithmKind;
using olsim::Instance;
using olsim::PredictorSpec;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    values.push_back(std::stod(cell));
  }
  if (values.empty()) throw olsim::ValidationError("empty grid \"" + text + "\"");
  return values;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

// Flat key=value configuration files; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw olsim::ValidationError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

AlgorithmConfig make_config(const std::string& algorithm, double theta,
                            double lambda, const std::string& solver) {
  AlgorithmConfig cfg;
  cfg.algorithm = olsim::algorithm_kind_from_string(algorithm);
  cfg.theta = theta;
  cfg.lambda = lambda;
  cfg.solver = olsim::solver_kind_from_string(solver);
  cfg.validate();
  return cfg;
}

struct RunSetup {
  AlgorithmConfig config;
  std::optional<PredictorSpec> predictor;
};

RunSetup make_run_setup(const std::string& algorithm, double theta,
                        double lambda, const std::string& solver,
                        const std::string& predictor,
                        std::uint64_t predictor_seed, bool have_lambda) {
  RunSetup setup;
  const AlgorithmKind kind = olsim::algorithm_kind_from_string(algorithm);
  if (kind == AlgorithmKind::Ssop) {
    if (!have_lambda) {
      throw olsim::ConfigError("ssop requires --lambda");
    }
    if (predictor.empty()) {
      throw olsim::ConfigError("ssop requires --predictor");
    }
    setup.predictor = PredictorSpec::parse(predictor, predictor_seed);
  } else if (!predictor.empty()) {
    throw olsim::ConfigError("--predictor applies to ssop only");
  }
  setup.config = make_config(algorithm, theta, lambda, solver);
  return setup;
}

olsim::SweepRow report_context(const std::string& instance_id,
                               const AlgorithmConfig& cfg,
                               const std::optional<PredictorSpec>& predictor,
                               std::size_t n) {
  olsim::SweepRow ctx;
  ctx.instance_id = instance_id;
  ctx.algorithm = olsim::to_string(cfg.algorithm);
  ctx.theta = cfg.theta;
  ctx.lambda = cfg.lambda;
  ctx.predictor = predictor ? predictor->name() : "";
  ctx.solver = olsim::to_string(cfg.solver);
  ctx.n = n;
  return ctx;
}

int cmd_generate(std::uint64_t seed, std::size_t n, const std::string& space,
                 const std::string& kind, double horizon, std::size_t nodes,
                 const std::string& matrix_path, const std::string& out) {
  Instance instance = matrix_path.empty()
                          ? olsim::generate_uniform(
                                seed, n, olsim::space_kind_from_string(space),
                                horizon, olsim::problem_kind_from_string(kind),
                                nodes)
                          : olsim::generate_uniform_over(
                                olsim::load_matrix_csv(matrix_path), seed, n,
                                horizon,
                                olsim::problem_kind_from_string(kind));
  olsim::write_instance(instance, out);
  ordered_json j;
  j["path"] = out;
  j["n"] = instance.size();
  std::cout << j.dump() << "\n";
  return kExitOk;
}

int cmd_run(const std::string& instance_path, const RunSetup& setup,
            bool verify, bool check_final_schedule) {
  const Instance instance = olsim::read_instance(instance_path);
  auto cache =
      std::make_shared<olsim::RouteCache>(instance, setup.config.solver);
  std::unique_ptr<olsim::Predictor> predictor;
  if (setup.predictor) {
    predictor = olsim::make_predictor(*setup.predictor, &instance,
                                      setup.config, cache);
  }
  const olsim::Trace trace =
      olsim::simulate(instance, setup.config, predictor.get(), cache);
  const olsim::OptResult opt = olsim::opt_dp(instance);
  const olsim::RunReport report =
      setup.config.algorithm == AlgorithmKind::Ssop
          ? olsim::classify_and_certify(trace, opt)
          : olsim::certify_plain(trace, opt);
  const auto ctx = report_context(instance_path, setup.config,
                                  setup.predictor, instance.size());
  if (!verify) {
    std::cout << olsim::run_report_to_json_text(report, ctx);
  } else {
    ordered_json j;
    j["report"] = ordered_json::parse(
        olsim::run_report_to_json_text(report, ctx));
    j["trace"] = ordered_json::parse(olsim::trace_to_json_text(trace));
    if (check_final_schedule) {
      const auto check = olsim::final_schedule_check(trace, instance, opt);
      ordered_json cj;
      cj["applicable"] = check.applicable;
      if (check.applicable) {
        cj["final_length"] = check.final_length;
        cj["length_bound"] = check.length_bound;
        cj["first_opt_served_id"] = check.first_opt_served_id;
        cj["holds"] = check.holds;
      }
      j["final_schedule_check"] = std::move(cj);
    }
    std::cout << j.dump(2) << "\n";
  }
  return report.violated ? kExitViolation : kExitOk;
}

int cmd_lowerbound(int k, const RunSetup& setup) {
  const olsim::LowerBoundReport report =
      olsim::lowerbound_game(k, setup.config, setup.predictor);
  std::cout << olsim::lowerbound_report_to_json_text(
      report, setup.config,
      setup.predictor ? setup.predictor->name() : "");
  return report.pass ? kExitOk : kExitViolation;
}

int cmd_sweep(const std::string& config_path,
              const std::map<std::string, std::string>& overrides,
              const std::string& out_csv) {
  std::map<std::string, std::string> kv;
  if (!config_path.empty()) kv = read_config_file(config_path);
  for (const auto& [key, value] : overrides) kv[key] = value;  // flags win

  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  olsim::SweepRequest request;
  request.solver = olsim::solver_kind_from_string(get("solver", "exact"));
  request.theta_grid = parse_grid(get("theta", "2.3028"));
  request.lambda_grid = parse_grid(get("lambda", "1.0"));
  const std::uint64_t predictor_seed =
      std::stoull(get("predictor_seed", get("seed", "0")));
  for (const std::string& name :
       split_list(get("predictors", "fixed-late"), ',')) {
    request.predictors.push_back(PredictorSpec::parse(name, predictor_seed));
  }
  request.jobs = std::stoi(get("jobs", "1"));

  const std::string instance_files = get("instances", "");
  if (!instance_files.empty()) {
    for (const std::string& path : split_list(instance_files, ';')) {
      request.instances.emplace_back(path, olsim::read_instance(path));
    }
  } else {
    const std::uint64_t seed = std::stoull(get("seed", "1"));
    const std::size_t count = std::stoull(get("count", "10"));
    const std::size_t n = std::stoull(get("n", "6"));
    const double horizon = std::stod(get("horizon", "2.5"));
    const olsim::SpaceKind space =
        olsim::space_kind_from_string(get("space", "line"));
    const olsim::ProblemKind kind =
        olsim::problem_kind_from_string(get("kind", "oltsp"));
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t s = seed + i;
      request.instances.emplace_back(
          "gen-" + std::to_string(s),
          olsim::generate_uniform(s, n, space, horizon, kind));
    }
  }

  const olsim::SweepResult result = olsim::sweep(request);
  std::ofstream out(out_csv);
  if (!out) {
    throw olsim::ValidationError("cannot open " + out_csv + " for writing");
  }
  out << olsim::sweep_rows_to_csv(result.rows);
  out.close();

  // Worst ratio per (theta, lambda) cell, in grid order.
  std::map<std::pair<double, double>, double> worst;
  std::size_t violations = 0;
  for (const olsim::SweepRow& row : result.rows) {
    auto& w = worst[{row.theta, row.lambda}];
    w = std::max(w, row.report.ratio);
    if (row.report.violated) ++violations;
  }
  ordered_json j;
  j["rows"] = result.rows.size();
  j["violations"] = violations;
  j["csv"] = out_csv;
  ordered_json cells = ordered_json::array();
  for (const auto& [cell, max_ratio] : worst) {
    ordered_json c;
    c["theta"] = cell.first;
    c["lambda"] = cell.second;
    c["max_ratio"] = max_ratio;
    cells.push_back(std::move(c));
  }
  j["worst"] = std::move(cells);
  std::cout << j.dump(2) << "\n";
  std::cerr << "sweep: " << result.rows.size() << " rows, " << violations
            << " violations, csv written to " << out_csv << "\n";
  return result.any_violation ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online routing laboratory: schedule-based OLTSP/OLDARP "
               "algorithms under competitive analysis"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random instance");
  std::uint64_t gen_seed = 1;
  std::size_t gen_n = 6;
  std::string gen_space = "line";
  std::string gen_kind = "oltsp";
  double gen_horizon = 2.5;
  std::size_t gen_nodes = 8;
  std::string gen_matrix;
  std::string gen_out = "instance.json";
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--n", gen_n, "number of requests");
  gen->add_option("--space", gen_space, "line|plane|explicit");
  gen->add_option("--kind", gen_kind, "oltsp|oldarp");
  gen->add_option("--horizon", gen_horizon, "arrival times in [0, horizon]");
  gen->add_option("--nodes", gen_nodes, "nodes of a random explicit space");
  gen->add_option("--matrix", gen_matrix, "explicit space from a CSV matrix");
  gen->add_option("-o,--out", gen_out, "output instance path");

  // shared run/verify/lowerbound options
  std::string run_instance;
  std::string run_algorithm = "smartstart";
  double run_theta = 2.3028;
  double run_lambda = 1.0;
  std::string run_solver = "exact";
  std::string run_predictor;
  std::uint64_t run_predictor_seed = 0;
  bool check_final_schedule = false;
  int lb_k = 8;

  auto add_run_options = [&](CLI::App* cmd, bool with_instance) {
    if (with_instance) {
      cmd->add_option("--instance,-i", run_instance, "instance JSON path")
          ->required();
    }
    cmd->add_option("--algorithm,-a", run_algorithm,
                    "ignore|smartstart|ssop");
    cmd->add_option("--theta", run_theta, "waiting scaling parameter");
    cmd->add_option("--lambda", run_lambda, "ssop confidence level");
    cmd->add_option("--solver", run_solver, "exact|christofides|nn");
    cmd->add_option("--predictor", run_predictor,
                    "oracle|fixed-late|fixed-early|worst|flip:<p>");
    cmd->add_option("--predictor-seed", run_predictor_seed,
                    "seed for flip predictors");
  };

  auto* run = app.add_subcommand("run", "Simulate one instance and certify");
  add_run_options(run, true);
  auto* verify = app.add_subcommand(
      "verify", "Simulate, certify and print the full trace");
  add_run_options(verify, true);
  verify->add_flag("--check-final-schedule", check_final_schedule,
                   "also check the internal final-schedule inequality");

  auto* lower = app.add_subcommand(
      "lowerbound", "Play the adaptive lower-bound game on the line");
  add_run_options(lower, false);
  lower->add_option("--k", lb_k, "adversary parameter; epsilon = 1/k");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run a parameter sweep to CSV");
  std::string sweep_config;
  std::string sweep_out = "sweep.csv";
  std::map<std::string, std::string> overrides;
  std::string ov_theta, ov_lambda, ov_predictors, ov_solver, ov_space,
      ov_kind, ov_instances;
  std::string ov_seed, ov_count, ov_n, ov_horizon, ov_jobs;
  sw->add_option("--config,-c", sweep_config, "key=value config file");
  sw->add_option("-o,--out", sweep_out, "output CSV path");
  sw->add_option("--theta", ov_theta, "theta grid, comma separated");
  sw->add_option("--lambda", ov_lambda, "lambda grid, comma separated");
  sw->add_option("--predictors", ov_predictors, "predictor list");
  sw->add_option("--solver", ov_solver, "exact|christofides|nn");
  sw->add_option("--space", ov_space, "line|plane|explicit");
  sw->add_option("--kind", ov_kind, "oltsp|oldarp");
  sw->add_option("--instances", ov_instances,
                 "semicolon-separated instance files");
  sw->add_option("--seed", ov_seed, "generator seed");
  sw->add_option("--count", ov_count, "number of generated instances");
  sw->add_option("--n", ov_n, "requests per generated instance");
  sw->add_option("--horizon", ov_horizon, "arrival horizon");
  sw->add_option("--jobs", ov_jobs, "parallel workers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(gen_seed, gen_n, gen_space, gen_kind, gen_horizon,
                          gen_nodes, gen_matrix, gen_out);
    }
    if (run->parsed() || verify->parsed()) {
      const RunSetup setup = make_run_setup(
          run_algorithm, run_theta, run_lambda, run_solver, run_predictor,
          run_predictor_seed,
          run->count("--lambda") > 0 || verify->count("--lambda") > 0);
      return cmd_run(run_instance, setup, verify->parsed(),
                     check_final_schedule);
    }
    if (lower->parsed()) {
      // Default solver: exact while the batches stay within the DP cap,
      // nearest-neighbor beyond (the lower bound holds for any solver).
      std::string solver = run_solver;
      if (lower->count("--solver") == 0) {
        solver = lb_k + 2 <= static_cast<int>(olsim::kOptDpCap) ? "exact"
                                                                : "nn";
      }
      const RunSetup setup = make_run_setup(
          run_algorithm, run_theta, run_lambda, solver, run_predictor,
          run_predictor_seed, lower->count("--lambda") > 0);
      return cmd_lowerbound(lb_k, setup);
    }
    if (sw->parsed()) {
      auto put = [&](const std::string& key, const std::string& value) {
        if (!value.empty()) overrides[key] = value;
      };
      put("theta", ov_theta);
      put("lambda", ov_lambda);
      put("predictors", ov_predictors);
      put("solver", ov_solver);
      put("space", ov_space);
      put("kind", ov_kind);
      put("instances", ov_instances);
      put("seed", ov_seed);
      put("count", ov_count);
      put("n", ov_n);
      put("horizon", ov_horizon);
      put("jobs", ov_jobs);
      return cmd_sweep(sweep_config, overrides, sweep_out);
    }
  } catch (const olsim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

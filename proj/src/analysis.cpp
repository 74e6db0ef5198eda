#include "olsim/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include <json.hpp>

namespace olsim {

namespace {

double ratio_of(double alg, double opt) {
  if (opt > 0.0) return alg / opt;
  return alg <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

RunReport finish_report(RunReport report) {
  if (report.certifiable) {
    report.violated =
        report.alg_cost > report.certified_bound + kCertifyTolerance;
    report.slack = report.certified_bound - report.alg_cost;
  } else {
    report.certified_bound = std::numeric_limits<double>::quiet_NaN();
    report.slack = std::numeric_limits<double>::quiet_NaN();
    report.violated = false;
  }
  return report;
}

}  // namespace

RunReport classify_and_certify(const Trace& trace, const OptResult& opt) {
  if (trace.config.algorithm != AlgorithmKind::Ssop) {
    throw ConfigError("per-case certification applies to ssop traces only");
  }
  RunReport report;
  report.alg_cost = trace.completion_time;
  report.opt_cost = opt.completion_time;
  report.eps_f = trace.eps_f;
  if (trace.schedules.empty()) {
    report.case_label = "empty";
    report.ratio = 1.0;
    return finish_report(report);
  }
  report.ratio = ratio_of(report.alg_cost, report.opt_cost);

  const ScheduleRecord& fin = trace.schedules.back();
  const double t_hat_f = fin.ssop_start;
  const double t_prime_f = fin.smartstart_ref_start;
  const double t_n = trace.last_arrival;

  if (!trace.server_working_at_tn) {
    if (fin.gadget == Gadget::Late) {
      if (t_prime_f <= t_n && t_n <= t_hat_f) {
        report.case_label = "W1";
      } else if (t_n < t_prime_f) {
        report.case_label = "W2";
      } else {
        report.case_label = "W3";
      }
    } else {
      if (t_hat_f <= t_n && t_n <= t_prime_f) {
        report.case_label = "W4";
      } else if (t_n < t_hat_f) {
        report.case_label = "W5";
      } else {
        report.case_label = "W6";
      }
    }
  } else {
    const ScheduleRecord& prev = trace.schedules[trace.schedules.size() - 2];
    const bool waited = t_hat_f > prev.finish;
    const Gadget which = waited ? fin.gadget : prev.gadget;
    report.case_label = std::string(waited ? "K1-" : "K2-") +
                        (which == Gadget::Late ? "late" : "early");
  }

  const auto rho = trace.config.rho();
  if (!rho) {
    report.certifiable = false;
    return finish_report(report);
  }
  const BoundSet b(trace.config.theta, *rho, trace.config.lambda);
  const double optv = report.opt_cost;
  const double eps = report.eps_f;
  double bound;
  if (report.case_label == "W1" || report.case_label == "W2" ||
      report.case_label == "K1-late") {
    bound = std::min(b.lambda_A * optv + b.lambda_A * eps,
                     b.B_inv_lambda * optv);
  } else if (report.case_label == "W3") {
    bound = b.lambda_A * optv;
  } else if (report.case_label == "W4" || report.case_label == "W6") {
    bound = std::min(b.B_lambda * optv + eps, b.A_over_lambda * optv);
  } else if (report.case_label == "W5" || report.case_label == "K1-early") {
    bound = b.B_lambda * optv;
  } else if (report.case_label == "K2-late") {
    bound = b.C_lambda * optv;
  } else {  // K2-early
    bound = b.C_inv_lambda * optv;
  }
  report.certified_bound = bound;
  return finish_report(report);
}

RunReport certify_plain(const Trace& trace, const OptResult& opt) {
  RunReport report;
  report.alg_cost = trace.completion_time;
  report.opt_cost = opt.completion_time;
  report.eps_f = trace.eps_f;
  if (trace.schedules.empty()) {
    report.case_label = "empty";
    report.ratio = 1.0;
    return finish_report(report);
  }
  report.ratio = ratio_of(report.alg_cost, report.opt_cost);
  const auto rho = trace.config.rho();
  if (trace.config.algorithm == AlgorithmKind::SmartStart && rho) {
    report.case_label = "theorem2";
    report.certified_bound =
        smartstart_bound(trace.config.theta, *rho) * report.opt_cost;
  } else {
    report.case_label = "uncertified";
    report.certifiable = false;
  }
  return finish_report(report);
}

FinalScheduleCheck final_schedule_check(const Trace& trace,
                                        const Instance& instance,
                                        const OptResult& opt) {
  FinalScheduleCheck check;
  if (trace.config.algorithm != AlgorithmKind::Ssop ||
      trace.schedules.size() < 2 || !trace.server_working_at_tn) {
    return check;
  }
  const ScheduleRecord& fin = trace.schedules.back();
  const ScheduleRecord& prev = trace.schedules[trace.schedules.size() - 2];
  if (fin.ssop_start > prev.finish) return check;  // K1: not applicable
  const auto rho = trace.config.rho();
  if (!rho) return check;
  check.applicable = true;
  check.final_length = fin.schedule.length;
  // First request of the final batch in the optimal service order.
  const Request* first = nullptr;
  for (int id : opt.order) {
    if (std::binary_search(fin.request_ids.begin(), fin.request_ids.end(),
                           id)) {
      for (const Request& r : instance.requests()) {
        if (r.id == id) {
          first = &r;
          break;
        }
      }
      break;
    }
  }
  if (!first) return check;
  check.first_opt_served_id = first->id;
  const double d =
      instance.space().distance(instance.space().origin(), first->pickup);
  check.length_bound =
      *rho * opt.completion_time - *rho * prev.actual_start + *rho * d;
  check.holds = check.final_length <= check.length_bound + kCertifyTolerance &&
                opt.completion_time >= first->arrival_time + d - kCertifyTolerance;
  return check;
}

SweepResult sweep(const SweepRequest& request) {
  if (request.theta_grid.empty() || request.lambda_grid.empty()) {
    throw ConfigError("sweep grids must be nonempty");
  }
  struct Cell {
    std::size_t instance_index;
    double theta;
    double lambda;
    std::size_t predictor_index;
  };
  std::vector<Cell> cells;
  for (std::size_t ii = 0; ii < request.instances.size(); ++ii) {
    for (double theta : request.theta_grid) {
      for (double lambda : request.lambda_grid) {
        if (!(lambda > 1.0 / theta) || !(lambda <= 1.0)) continue;
        for (std::size_t pi = 0; pi < request.predictors.size(); ++pi) {
          cells.push_back({ii, theta, lambda, pi});
        }
      }
    }
  }

  // Offline optima and route caches are shared across every cell of an
  // instance; both depend only on the instance (and solver).
  std::vector<OptResult> opts(request.instances.size());
  std::vector<std::shared_ptr<RouteCache>> caches(request.instances.size());
  for (std::size_t ii = 0; ii < request.instances.size(); ++ii) {
    opts[ii] = opt_dp(request.instances[ii].second);
    caches[ii] = std::make_shared<RouteCache>(request.instances[ii].second,
                                              request.solver);
  }

  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      const Cell& cell = cells[i];
      const auto& [id, instance] = request.instances[cell.instance_index];
      AlgorithmConfig cfg;
      cfg.algorithm = AlgorithmKind::Ssop;
      cfg.theta = cell.theta;
      cfg.lambda = cell.lambda;
      cfg.solver = request.solver;
      const PredictorSpec& spec = request.predictors[cell.predictor_index];
      auto predictor = make_predictor(spec, &instance, cfg,
                                      caches[cell.instance_index]);
      Trace trace = simulate(instance, cfg, predictor.get(),
                             caches[cell.instance_index]);
      SweepRow row;
      row.instance_id = id;
      row.theta = cell.theta;
      row.lambda = cell.lambda;
      row.predictor = spec.name();
      row.solver = to_string(request.solver);
      row.n = instance.size();
      row.report = classify_and_certify(trace, opts[cell.instance_index]);
      rows[i] = std::move(row);
    }
  };
  const int jobs = std::max(1, request.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  result.rows = std::move(rows);
  for (const SweepRow& row : result.rows) {
    if (row.report.violated) result.any_violation = true;
  }
  return result;
}

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows) {
  std::string csv =
      "instance_id,algorithm,theta,lambda,predictor,solver,n,alg_cost,"
      "opt_cost,ratio,eps_f,case,bound,slack,violated\n";
  for (const SweepRow& row : rows) {
    const RunReport& r = row.report;
    csv += row.instance_id + "," + row.algorithm + "," + fmt9(row.theta) +
           "," + fmt9(row.lambda) + "," + row.predictor + "," + row.solver +
           "," + std::to_string(row.n) + "," + fmt9(r.alg_cost) + "," +
           fmt9(r.opt_cost) + "," + fmt9(r.ratio) + "," + fmt9(r.eps_f) +
           "," + r.case_label + "," + fmt9(r.certified_bound) + "," +
           fmt9(r.slack) + "," + (r.violated ? "true" : "false") + "\n";
  }
  return csv;
}

namespace {

// Exact offline optimum for a completed adversary instance. The DP is used
// when it fits; larger k fall back to the line-sweep certificate, which
// matches the analytic lower bound max(t_n, 2*max d(o, a_i)) exactly on
// these instances.
double adversary_opt(const Instance& instance) {
  if (instance.size() <= kOptDpCap) {
    return opt_dp(instance).completion_time;
  }
  std::vector<int> order;
  std::vector<const Request*> reqs;
  for (const Request& r : instance.requests()) reqs.push_back(&r);
  std::sort(reqs.begin(), reqs.end(), [](const Request* a, const Request* b) {
    if (a->pickup.x != b->pickup.x) return a->pickup.x > b->pickup.x;
    return a->arrival_time < b->arrival_time;
  });
  for (const Request* r : reqs) order.push_back(r->id);
  const double upper = replay_order(instance, order);
  double reach = 0.0;
  for (const Request& r : instance.requests()) {
    reach = std::max(reach, instance.space().distance(
                                instance.space().origin(), r.pickup));
  }
  const double lower = std::max(instance.last_arrival(), 2.0 * reach);
  if (upper != lower) {
    throw ValidationError(
        "line-sweep certificate failed: replay " + std::to_string(upper) +
        " vs lower bound " + std::to_string(lower));
  }
  return upper;
}

}  // namespace

LowerBoundReport lowerbound_game(
    int k, const AlgorithmConfig& config,
    const std::optional<PredictorSpec>& predictor) {
  std::unique_ptr<Predictor> pred;
  if (config.algorithm == AlgorithmKind::Ssop) {
    if (!predictor) throw ConfigError("ssop requires a predictor");
    pred = make_predictor(*predictor, nullptr, config);
  }
  AdversaryOutcome outcome = simulate_adversary(k, config, pred.get());
  LowerBoundReport report;
  report.k = k;
  report.epsilon = 1.0 / static_cast<double>(k);
  report.t1 = outcome.t1;
  report.triggered_case = outcome.killer.triggered_case;
  report.h = outcome.killer.h;
  report.analyzed = outcome.killer.analyzed;
  report.killer = outcome.killer.request;
  report.alg_cost = outcome.trace.completion_time;
  report.opt_cost = adversary_opt(outcome.completed_instance);
  report.ratio = ratio_of(report.alg_cost, report.opt_cost);
  report.bound = 2.0 - report.epsilon;
  report.pass = !report.analyzed || report.ratio >= report.bound - 1e-9;
  return report;
}

std::string run_report_to_json_text(const RunReport& report,
                                    const SweepRow& context) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  j["instance_id"] = context.instance_id;
  j["algorithm"] = context.algorithm;
  j["theta"] = context.theta;
  j["lambda"] = context.lambda;
  j["predictor"] = context.predictor;
  j["solver"] = context.solver;
  j["n"] = context.n;
  j["alg_cost"] = report.alg_cost;
  j["opt_cost"] = report.opt_cost;
  j["ratio"] = report.ratio;
  j["eps_f"] = report.eps_f;
  j["case"] = report.case_label;
  if (report.certifiable) {
    j["bound"] = report.certified_bound;
    j["slack"] = report.slack;
  } else {
    j["bound"] = nullptr;
    j["slack"] = nullptr;
  }
  j["violated"] = report.violated;
  j["certifiable"] = report.certifiable;
  return j.dump(2) + "\n";
}

std::string lowerbound_report_to_json_text(const LowerBoundReport& report,
                                           const AlgorithmConfig& config,
                                           const std::string& predictor_name) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  j["k"] = report.k;
  j["epsilon"] = report.epsilon;
  j["algorithm"] = to_string(config.algorithm);
  j["theta"] = config.theta;
  j["lambda"] = config.lambda;
  j["solver"] = to_string(config.solver);
  if (!predictor_name.empty()) j["predictor"] = predictor_name;
  j["t1"] = report.t1;
  j["case"] = report.triggered_case;
  if (report.h >= 0) j["h"] = report.h;
  j["analyzed"] = report.analyzed;
  ordered_json killer;
  killer["id"] = report.killer.id;
  killer["t"] = report.killer.arrival_time;
  killer["a"] = ordered_json::array({report.killer.pickup.x});
  j["killer"] = std::move(killer);
  j["alg_cost"] = report.alg_cost;
  j["opt_cost"] = report.opt_cost;
  j["ratio"] = report.ratio;
  j["bound"] = report.bound;
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

}  // namespace olsim

#include "olsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "olsim/predictor.hpp"

namespace olsim {

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::Ignore: return "ignore";
    case AlgorithmKind::SmartStart: return "smartstart";
    case AlgorithmKind::Ssop: return "ssop";
  }
  return "?";
}

AlgorithmKind algorithm_kind_from_string(const std::string& name) {
  if (name == "ignore") return AlgorithmKind::Ignore;
  if (name == "smartstart") return AlgorithmKind::SmartStart;
  if (name == "ssop") return AlgorithmKind::Ssop;
  throw ConfigError("unknown algorithm \"" + name + "\"");
}

std::string to_string(Gadget gadget) {
  switch (gadget) {
    case Gadget::None: return "none";
    case Gadget::Late: return "late";
    case Gadget::Early: return "early";
  }
  return "?";
}

void AlgorithmConfig::validate() const {
  if (!(theta > 1.0)) throw ConfigError("theta must exceed 1");
  if (auto r = rho(); r && !(theta >= *r)) {
    throw ConfigError("theta must be at least the solver guarantee rho = " +
                      std::to_string(*r));
  }
  if (algorithm == AlgorithmKind::Ssop) {
    if (!(lambda > 1.0 / theta) || !(lambda <= 1.0)) {
      throw ConfigError("lambda must lie in (1/theta, 1]");
    }
  }
}

namespace {

struct TimedArrival {
  double visible_at = 0.0;
  Request request;
};

// Arrival source. Visible times are when the engine learns of a request;
// they coincide with arrival times except for the adversary's killer, which
// becomes visible only once the first schedule start has been observed.
class RequestFeed {
 public:
  virtual ~RequestFeed() = default;
  virtual std::optional<TimedArrival> peek() = 0;
  virtual void pop() = 0;
  virtual void on_first_schedule_start(double /*t1*/) {}
};

class InstanceFeed : public RequestFeed {
 public:
  explicit InstanceFeed(const Instance& instance) : instance_(&instance) {}

  std::optional<TimedArrival> peek() override {
    if (next_ >= instance_->size()) return std::nullopt;
    const Request& r = instance_->requests()[next_];
    return TimedArrival{r.arrival_time, r};
  }
  void pop() override { ++next_; }

 private:
  const Instance* instance_;
  std::size_t next_ = 0;
};

class AdversaryFeed : public RequestFeed {
 public:
  explicit AdversaryFeed(int k) : adversary_(k) {}

  std::optional<TimedArrival> peek() override {
    std::optional<TimedArrival> scripted;
    if (next_ < adversary_.scripted().size()) {
      const Request& r = adversary_.scripted()[next_];
      scripted = TimedArrival{r.arrival_time, r};
    }
    if (injected_ && (!scripted || injected_->visible_at < scripted->visible_at)) {
      return injected_;
    }
    return scripted;
  }

  void pop() override {
    std::optional<TimedArrival> scripted;
    if (next_ < adversary_.scripted().size()) {
      const Request& r = adversary_.scripted()[next_];
      scripted = TimedArrival{r.arrival_time, r};
    }
    if (injected_ && (!scripted || injected_->visible_at < scripted->visible_at)) {
      injected_.reset();
      return;
    }
    adversary_.next(std::nullopt);
    ++next_;
  }

  void on_first_schedule_start(double t1) override {
    const auto info = adversary_.observe_first_start(t1);
    // The killer cannot join the schedule whose start triggered it; it is
    // visible from the observation moment at the earliest.
    injected_ = TimedArrival{std::max(t1, info.request.arrival_time),
                             info.request};
  }

  const AdaptiveAdversary& adversary() const { return adversary_; }

 private:
  AdaptiveAdversary adversary_;
  std::size_t next_ = 0;
  std::optional<TimedArrival> injected_;
};

// Per-gadget waiting scale kappa: the server starts at the earliest t with
// t + |R_{U_t}| <= kappa * t. Ignore starts immediately (kappa infinite).
double waiting_scale(const AlgorithmConfig& cfg, Gadget gadget) {
  switch (cfg.algorithm) {
    case AlgorithmKind::Ignore:
      return std::numeric_limits<double>::infinity();
    case AlgorithmKind::SmartStart:
      return cfg.theta;
    case AlgorithmKind::Ssop:
      return gadget == Gadget::Late ? cfg.lambda * cfg.theta
                                    : cfg.theta / cfg.lambda;
  }
  return cfg.theta;
}

double threshold_time(double route_length, double kappa) {
  if (std::isinf(kappa)) return 0.0;
  return route_length / (kappa - 1.0);
}

struct EngineResult {
  bool complete = true;
  Trace trace;
  double first_start = 0.0;
};

EngineResult run_engine(const AlgorithmConfig& cfg,
                        const std::function<ScheduleRoute(
                            const std::vector<Request>&)>& solve,
                        RequestFeed& feed, const DecisionFn& decide) {
  cfg.validate();

  std::vector<Request> unserved;
  std::vector<Request> seen;
  std::vector<ScheduleRecord> records;
  PredictionLog log;
  double now = 0.0;
  int schedule_index = 0;
  bool complete = true;

  auto absorb_until = [&](double limit) {
    while (auto next = feed.peek()) {
      if (next->visible_at > limit) break;
      unserved.push_back(next->request);
      seen.push_back(next->request);
      feed.pop();
    }
  };

  while (true) {
    if (unserved.empty()) {
      auto next = feed.peek();
      if (!next) break;  // idle forever: run over
      now = std::max(now, next->visible_at);
      absorb_until(now);
    }

    // Predicting: one binary decision per upcoming schedule, fixed when the
    // server first becomes non-idle at the origin.
    Gadget gadget = Gadget::None;
    if (cfg.algorithm == AlgorithmKind::Ssop) {
      PredictionContext ctx;
      ctx.schedule_index = schedule_index;
      ctx.now = now;
      ctx.unserved_ids.reserve(unserved.size());
      for (const Request& r : unserved) ctx.unserved_ids.push_back(r.id);
      auto d = decide(ctx);
      if (!d) {
        complete = false;
        break;
      }
      gadget = *d;
      log.decisions.push_back({schedule_index, gadget});
    }
    const double kappa = waiting_scale(cfg, gadget);

    // Waiting: requests arriving at or before the candidate start join the
    // schedule; each join rebuilds the route and moves the candidate.
    ScheduleRoute route = solve(unserved);
    double build_time = now;
    double candidate = std::max(now, threshold_time(route.length, kappa));
    while (auto next = feed.peek()) {
      if (next->visible_at > candidate) break;
      now = std::max(now, next->visible_at);
      unserved.push_back(next->request);
      seen.push_back(next->request);
      feed.pop();
      route = solve(unserved);
      build_time = now;
      candidate = std::max(now, threshold_time(route.length, kappa));
    }

    ScheduleRecord rec;
    rec.request_ids.reserve(unserved.size());
    for (const Request& r : unserved) rec.request_ids.push_back(r.id);
    std::sort(rec.request_ids.begin(), rec.request_ids.end());
    rec.schedule = route;
    rec.build_time = build_time;
    rec.gadget = gadget;
    rec.actual_start = candidate;
    rec.finish = candidate + route.length;
    // Decision times are the pure thresholds of the final request set; the
    // case analysis compares them with t_n and the previous finish, so they
    // are deliberately not clamped to the actual start.
    rec.ssop_start = cfg.algorithm == AlgorithmKind::Ignore
                         ? rec.actual_start
                         : threshold_time(route.length, kappa);
    rec.smartstart_ref_start = cfg.algorithm == AlgorithmKind::Ignore
                                   ? rec.actual_start
                                   : route.length / (cfg.theta - 1.0);
    unserved.clear();
    records.push_back(rec);

    if (schedule_index == 0) feed.on_first_schedule_start(rec.actual_start);
    ++schedule_index;

    // Working: arrivals during [start, finish] are deferred to the next
    // schedule.
    now = rec.finish;
    absorb_until(now);
  }

  EngineResult result;
  result.complete = complete;
  Trace& tr = result.trace;
  tr.config = cfg;
  tr.schedules = std::move(records);
  tr.completion_time =
      tr.schedules.empty() ? 0.0 : tr.schedules.back().finish;
  tr.requests_total = seen.size();
  tr.predictions = std::move(log);
  double t_n = 0.0;
  for (const Request& r : seen) t_n = std::max(t_n, r.arrival_time);
  tr.last_arrival = t_n;
  if (!tr.schedules.empty() && !seen.empty()) {
    tr.eps_f = std::abs(tr.schedules.back().ssop_start - t_n);
    for (const ScheduleRecord& rec : tr.schedules) {
      if (rec.actual_start < t_n && t_n < rec.finish) {
        tr.server_working_at_tn = true;
        break;
      }
    }
  }
  result.first_start =
      tr.schedules.empty() ? 0.0 : tr.schedules.front().actual_start;
  return result;
}

void check_predictor_presence(const AlgorithmConfig& cfg,
                              const Predictor* predictor) {
  if (cfg.algorithm == AlgorithmKind::Ssop && predictor == nullptr) {
    throw ConfigError("ssop requires a predictor");
  }
  if (cfg.algorithm != AlgorithmKind::Ssop && predictor != nullptr) {
    throw ConfigError("only ssop takes a predictor");
  }
}

}  // namespace

Trace simulate(const Instance& instance, const AlgorithmConfig& config,
               Predictor* predictor, std::shared_ptr<RouteCache> cache) {
  check_predictor_presence(config, predictor);
  if (!cache) cache = std::make_shared<RouteCache>(instance, config.solver);
  if (cache->solver() != config.solver) {
    throw ConfigError("route cache solver does not match the config");
  }
  InstanceFeed feed(instance);
  auto solve = [&](const std::vector<Request>& reqs) {
    std::vector<int> ids;
    ids.reserve(reqs.size());
    for (const Request& r : reqs) ids.push_back(r.id);
    return cache->solve(ids);
  };
  DecisionFn decide = [&](const PredictionContext& ctx) {
    return std::optional<Gadget>(predictor->predict(ctx));
  };
  EngineResult res = run_engine(config, solve, feed, decide);
  if (predictor) {
    res.trace.predictions.oracle_fallback = predictor->used_fallback();
  }
  return std::move(res.trace);
}

SimOutcome simulate_partial(const Instance& instance,
                            const AlgorithmConfig& config,
                            const DecisionFn& decide,
                            const std::shared_ptr<RouteCache>& cache) {
  std::shared_ptr<RouteCache> c = cache;
  if (!c) c = std::make_shared<RouteCache>(instance, config.solver);
  InstanceFeed feed(instance);
  auto solve = [&](const std::vector<Request>& reqs) {
    std::vector<int> ids;
    ids.reserve(reqs.size());
    for (const Request& r : reqs) ids.push_back(r.id);
    return c->solve(ids);
  };
  EngineResult res = run_engine(config, solve, feed, decide);
  return SimOutcome{res.complete, std::move(res.trace)};
}

AdversaryOutcome simulate_adversary(int k, const AlgorithmConfig& config,
                                    Predictor* predictor) {
  check_predictor_presence(config, predictor);
  AdversaryFeed feed(k);
  const MetricSpace space = MetricSpace::line();
  auto solve = [&](const std::vector<Request>& reqs) {
    return solve_schedule(config.solver, space, reqs, ProblemKind::Oltsp);
  };
  DecisionFn decide = [&](const PredictionContext& ctx) {
    return std::optional<Gadget>(predictor->predict(ctx));
  };
  EngineResult res = run_engine(config, solve, feed, decide);
  if (!feed.adversary().finished()) {
    throw AdversaryError("run ended before the first schedule started");
  }
  AdversaryOutcome out{std::move(res.trace), res.first_start,
                       *feed.adversary().killer(),
                       feed.adversary().completed_instance()};
  return out;
}

std::string trace_to_json_text(const Trace& trace) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  ordered_json cfg;
  cfg["algorithm"] = to_string(trace.config.algorithm);
  cfg["theta"] = trace.config.theta;
  cfg["lambda"] = trace.config.lambda;
  cfg["solver"] = to_string(trace.config.solver);
  j["config"] = std::move(cfg);
  ordered_json schedules = ordered_json::array();
  for (const ScheduleRecord& rec : trace.schedules) {
    ordered_json rj;
    rj["request_ids"] = rec.request_ids;
    rj["order"] = rec.schedule.order;
    rj["length"] = rec.schedule.length;
    rj["solver"] = to_string(rec.schedule.solver);
    if (rec.schedule.rho_guarantee) {
      rj["rho"] = *rec.schedule.rho_guarantee;
    } else {
      rj["rho"] = nullptr;
    }
    rj["build_time"] = rec.build_time;
    rj["gadget"] = to_string(rec.gadget);
    rj["ssop_start"] = rec.ssop_start;
    rj["smartstart_ref_start"] = rec.smartstart_ref_start;
    rj["actual_start"] = rec.actual_start;
    rj["finish"] = rec.finish;
    schedules.push_back(std::move(rj));
  }
  j["schedules"] = std::move(schedules);
  j["completion_time"] = trace.completion_time;
  j["requests_total"] = trace.requests_total;
  j["last_arrival"] = trace.last_arrival;
  j["eps_f"] = trace.eps_f;
  j["server_working_at_tn"] = trace.server_working_at_tn;
  ordered_json pj;
  ordered_json decisions = ordered_json::array();
  for (const PredictionDecision& d : trace.predictions.decisions) {
    decisions.push_back(
        ordered_json::array({d.schedule_index, to_string(d.gadget)}));
  }
  pj["decisions"] = std::move(decisions);
  pj["oracle_fallback"] = trace.predictions.oracle_fallback;
  if (trace.predictions.mismatches_vs_oracle >= 0) {
    pj["mismatches_vs_oracle"] = trace.predictions.mismatches_vs_oracle;
  }
  j["predictions"] = std::move(pj);
  return j.dump(2) + "\n";
}

}  // namespace olsim

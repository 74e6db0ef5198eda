#include <doctest.h>

#include <cmath>

#include "olsim/engine.hpp"
#include "olsim/offline.hpp"
#include "olsim/predictor.hpp"

using namespace olsim;

namespace {

Instance line_instance(std::vector<std::tuple<int, double, double>> items) {
  std::vector<Request> rs;
  for (auto [id, t, x] : items) {
    Request r;
    r.id = id;
    r.arrival_time = t;
    r.pickup = Point::line(x);
    rs.push_back(r);
  }
  return Instance(MetricSpace::line(), std::move(rs), ProblemKind::Oltsp);
}

AlgorithmConfig smartstart(double theta) {
  AlgorithmConfig cfg;
  cfg.algorithm = AlgorithmKind::SmartStart;
  cfg.theta = theta;
  return cfg;
}

AlgorithmConfig ignore_cfg() {
  AlgorithmConfig cfg;
  cfg.algorithm = AlgorithmKind::Ignore;
  cfg.theta = 2.0;
  return cfg;
}

AlgorithmConfig ssop(double theta, double lambda) {
  AlgorithmConfig cfg;
  cfg.algorithm = AlgorithmKind::Ssop;
  cfg.theta = theta;
  cfg.lambda = lambda;
  return cfg;
}

Trace run_ssop(const Instance& inst, const AlgorithmConfig& cfg,
               const PredictorSpec& spec) {
  auto cache = std::make_shared<RouteCache>(inst, cfg.solver);
  auto pred = make_predictor(spec, &inst, cfg, cache);
  return simulate(inst, cfg, pred.get(), cache);
}

bool traces_agree(const Trace& a, const Trace& b) {
  if (a.schedules.size() != b.schedules.size()) return false;
  for (std::size_t i = 0; i < a.schedules.size(); ++i) {
    const ScheduleRecord& x = a.schedules[i];
    const ScheduleRecord& y = b.schedules[i];
    if (x.actual_start != y.actual_start || x.finish != y.finish) return false;
    if (x.schedule.order != y.schedule.order) return false;
  }
  return a.completion_time == b.completion_time;
}

}  // namespace

TEST_CASE("smartstart hand trace: single request at 1") {
  const Instance inst = line_instance({{0, 0.0, 1.0}});
  const Trace tr = simulate(inst, smartstart(2.0));
  REQUIRE(tr.schedules.size() == 1);
  // |R| = 2, start at |R|/(theta-1) = 2, finish 4.
  CHECK(tr.schedules[0].actual_start == 2.0);
  CHECK(tr.schedules[0].finish == 4.0);
  CHECK(tr.completion_time == 4.0);
  CHECK(tr.completion_time / opt_dp(inst).completion_time == 2.0);
  CHECK_FALSE(tr.server_working_at_tn);
  CHECK(tr.eps_f == 2.0);  // decision threshold 2 vs t_n = 0
}

TEST_CASE("ignore starts immediately") {
  const Instance inst = line_instance({{0, 0.0, 1.0}});
  const Trace tr = simulate(inst, ignore_cfg());
  REQUIRE(tr.schedules.size() == 1);
  CHECK(tr.schedules[0].actual_start == 0.0);
  CHECK(tr.completion_time == 2.0);
}

TEST_CASE("smartstart reference start bookkeeping") {
  const double theta = 2.3028;
  SUBCASE("threshold ahead of the build time") {
    const Instance inst = line_instance({{0, 0.0, 1.0}});
    const Trace tr = simulate(inst, smartstart(theta));
    CHECK(tr.schedules[0].smartstart_ref_start ==
          doctest::Approx(2.0 / (theta - 1.0)).epsilon(1e-15));
    CHECK(tr.schedules[0].ssop_start == tr.schedules[0].smartstart_ref_start);
    CHECK(tr.schedules[0].actual_start ==
          tr.schedules[0].smartstart_ref_start);
  }
  SUBCASE("threshold already passed when the set is built") {
    const Instance inst = line_instance({{0, 3.0, 1.0}});
    const Trace tr = simulate(inst, smartstart(theta));
    // The decision threshold stays |R|/(theta-1); the start clamps to the
    // arrival.
    CHECK(tr.schedules[0].smartstart_ref_start ==
          doctest::Approx(2.0 / (theta - 1.0)).epsilon(1e-15));
    CHECK(tr.schedules[0].actual_start == 3.0);
    CHECK(tr.completion_time == 5.0);
  }
}

TEST_CASE("request arriving exactly at the start joins the schedule") {
  // theta = 2, request at 1 -> start at 2; the second request arrives at
  // exactly 2 and at position 0.5, so one schedule serves both.
  const Instance inst = line_instance({{0, 0.0, 1.0}, {1, 2.0, 0.5}});
  const Trace tr = simulate(inst, smartstart(2.0));
  REQUIRE(tr.schedules.size() == 1);
  CHECK(tr.schedules[0].request_ids == std::vector<int>{0, 1});
  CHECK(tr.schedules[0].actual_start == 2.0);
}

TEST_CASE("arrivals during working are deferred") {
  // First schedule [2, 4]; request 1 arrives at 3 and must wait for the
  // second schedule.
  const Instance inst = line_instance({{0, 0.0, 1.0}, {1, 3.0, -0.5}});
  const Trace tr = simulate(inst, smartstart(2.0));
  REQUIRE(tr.schedules.size() == 2);
  CHECK(tr.schedules[0].request_ids == std::vector<int>{0});
  CHECK(tr.schedules[1].request_ids == std::vector<int>{1});
  CHECK(tr.server_working_at_tn);
  CHECK(tr.schedules[1].actual_start >= tr.schedules[0].finish);
}

TEST_CASE("waiting recomputes the schedule as requests arrive") {
  // Request 1 arrives at 1 (before the threshold start) and extends the
  // route, pushing the start further out.
  const Instance inst = line_instance({{0, 0.0, 1.0}, {1, 1.0, -1.0}});
  const Trace tr = simulate(inst, smartstart(2.0));
  REQUIRE(tr.schedules.size() == 1);
  CHECK(tr.schedules[0].schedule.length == 4.0);
  CHECK(tr.schedules[0].actual_start == 4.0);
  CHECK(tr.completion_time == 8.0);
}

TEST_CASE("empty instance completes at time 0") {
  const Instance inst(MetricSpace::line(), {}, ProblemKind::Oltsp);
  const Trace tr = simulate(inst, smartstart(2.0));
  CHECK(tr.schedules.empty());
  CHECK(tr.completion_time == 0.0);
  CHECK(tr.eps_f == 0.0);
}

TEST_CASE("config validation") {
  const Instance inst = line_instance({{0, 0.0, 1.0}});
  CHECK_THROWS_AS(simulate(inst, smartstart(1.0)), ConfigError);
  CHECK_THROWS_AS(simulate(inst, smartstart(0.5)), ConfigError);
  AlgorithmConfig chris = smartstart(1.2);
  chris.solver = SolverKind::Christofides;  // theta below rho = 1.5
  CHECK_THROWS_AS(simulate(inst, chris), ConfigError);
  CHECK_THROWS_AS(simulate(inst, ssop(2.0, 0.4)), ConfigError);  // <= 1/theta
  CHECK_THROWS_AS(simulate(inst, ssop(2.0, 1.1)), ConfigError);
  // Predictor presence is tied to the algorithm.
  CHECK_THROWS_AS(simulate(inst, ssop(2.0, 0.8)), ConfigError);
  auto pred = make_predictor(PredictorSpec::fixed_late(), &inst,
                             smartstart(2.0));
  CHECK_THROWS_AS(simulate(inst, smartstart(2.0), pred.get()), ConfigError);
}

TEST_CASE("ssop gadget thresholds") {
  const Instance inst = line_instance({{0, 0.0, 1.0}});
  const double theta = 2.3028;
  const double lambda = 0.8;
  const Trace late = run_ssop(inst, ssop(theta, lambda),
                              PredictorSpec::fixed_late());
  REQUIRE(late.schedules.size() == 1);
  CHECK(late.schedules[0].gadget == Gadget::Late);
  CHECK(late.schedules[0].actual_start ==
        doctest::Approx(2.0 / (lambda * theta - 1.0)).epsilon(1e-15));
  const Trace early = run_ssop(inst, ssop(theta, lambda),
                               PredictorSpec::fixed_early());
  CHECK(early.schedules[0].actual_start ==
        doctest::Approx(2.0 / (theta / lambda - 1.0)).epsilon(1e-15));
  CHECK(early.schedules[0].actual_start < late.schedules[0].actual_start);
  // t-prime is recorded for both gadgets.
  CHECK(early.schedules[0].smartstart_ref_start ==
        doctest::Approx(2.0 / (theta - 1.0)).epsilon(1e-15));
}

TEST_CASE("ssop at lambda 1 replays smartstart exactly") {
  for (std::uint64_t seed = 200; seed < 210; ++seed) {
    const Instance inst = generate_uniform(seed, 1 + seed % 8,
                                           SpaceKind::Line, 2.5,
                                           ProblemKind::Oltsp);
    const Trace base = simulate(inst, smartstart(2.3028));
    for (const auto& spec :
         {PredictorSpec::fixed_late(), PredictorSpec::fixed_early(),
          PredictorSpec::oracle_best(), PredictorSpec::adversarial_worst(),
          PredictorSpec::random_flip(0.5, seed)}) {
      const Trace tr = run_ssop(inst, ssop(2.3028, 1.0), spec);
      CHECK(traces_agree(base, tr));
    }
  }
}

TEST_CASE("trace invariants on random runs") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const Instance inst = generate_uniform(
        seed, 1 + seed % 9, seed % 2 ? SpaceKind::Line : SpaceKind::Plane,
        seed % 3 == 0 ? 1.0 : 3.0,
        seed % 4 < 2 ? ProblemKind::Oltsp : ProblemKind::Oldarp);
    const AlgorithmConfig cfg =
        seed % 2 ? smartstart(1.5 + 0.1 * (seed % 10)) : ssop(2.3028, 0.7);
    const Trace tr =
        cfg.algorithm == AlgorithmKind::Ssop
            ? run_ssop(inst, cfg, PredictorSpec::random_flip(0.3, seed))
            : simulate(inst, cfg);

    // Determinism.
    const Trace again =
        cfg.algorithm == AlgorithmKind::Ssop
            ? run_ssop(inst, cfg, PredictorSpec::random_flip(0.3, seed))
            : simulate(inst, cfg);
    CHECK(traces_agree(tr, again));

    // Every request served exactly once.
    std::size_t served = 0;
    for (const ScheduleRecord& rec : tr.schedules) {
      served += rec.request_ids.size();
    }
    CHECK(served == inst.size());

    double prev_finish = 0.0;
    for (std::size_t i = 0; i < tr.schedules.size(); ++i) {
      const ScheduleRecord& rec = tr.schedules[i];
      // Non-overlap and ordering.
      CHECK(rec.actual_start >= prev_finish);
      CHECK(rec.finish == rec.actual_start + rec.schedule.length);
      CHECK(rec.actual_start >= rec.build_time);
      prev_finish = rec.finish;
      // Threshold certificate: start + length <= kappa * start.
      const double kappa =
          cfg.algorithm == AlgorithmKind::SmartStart
              ? cfg.theta
              : (rec.gadget == Gadget::Late ? cfg.lambda * cfg.theta
                                            : cfg.theta / cfg.lambda);
      CHECK(rec.actual_start + rec.schedule.length <=
            kappa * rec.actual_start + 1e-9);
      // Requests never start before they arrive.
      for (int id : rec.request_ids) {
        for (const Request& r : inst.requests()) {
          if (r.id == id) CHECK(r.arrival_time <= rec.actual_start);
        }
      }
    }
    CHECK(tr.completion_time == prev_finish);
  }
}

TEST_CASE("adversary runs feed the first start and finish the game") {
  const AlgorithmConfig cfg = smartstart(2.0);
  const AdversaryOutcome out = simulate_adversary(4, cfg);
  CHECK(out.t1 == out.trace.schedules[0].actual_start);
  CHECK(out.completed_instance.size() == 6);
  // Every adversary request is eventually served.
  std::size_t served = 0;
  for (const ScheduleRecord& rec : out.trace.schedules) {
    served += rec.request_ids.size();
  }
  CHECK(served == 6);
}

TEST_CASE("oracle predictors are rejected against the adversary") {
  AlgorithmConfig cfg = ssop(2.3028, 0.8);
  auto oracle = make_predictor(PredictorSpec::oracle_best(), nullptr, cfg);
  CHECK_THROWS_AS(simulate_adversary(4, cfg, oracle.get()), PredictorError);
  auto flip = make_predictor(PredictorSpec::random_flip(1.0, 1), nullptr, cfg);
  CHECK_THROWS_AS(simulate_adversary(4, cfg, flip.get()), PredictorError);
  auto late = make_predictor(PredictorSpec::fixed_late(), nullptr, cfg);
  const AdversaryOutcome out = simulate_adversary(4, cfg, late.get());
  CHECK(out.trace.completion_time > 0.0);
}

TEST_CASE("trace json serializes") {
  const Instance inst = line_instance({{0, 0.0, 1.0}, {1, 3.0, -0.5}});
  const Trace tr = run_ssop(inst, ssop(2.0, 0.9), PredictorSpec::fixed_late());
  const std::string text = trace_to_json_text(tr);
  CHECK(text.find("\"schedules\"") != std::string::npos);
  CHECK(text.find("\"gadget\": \"late\"") != std::string::npos);
  CHECK(text.find("\"server_working_at_tn\"") != std::string::npos);
}

#ifndef OLSIM_ENGINE_HPP
#define OLSIM_ENGINE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "olsim/adversary.hpp"
#include "olsim/instance.hpp"
#include "olsim/schedule.hpp"

namespace olsim {

enum class AlgorithmKind { Ignore, SmartStart, Ssop };
enum class Gadget { None, Late, Early };

std::string to_string(AlgorithmKind kind);
AlgorithmKind algorithm_kind_from_string(const std::string& name);
std::string to_string(Gadget gadget);

// Parameters of one simulated algorithm. theta is the waiting scaling
// parameter (> 1, >= the solver's guarantee when it has one); lambda is
// SSOP's confidence level in (1/theta, 1]. The late-start gadget waits for
// t + |R| <= lambda*theta*t, the early-start gadget for
// t + |R| <= (theta/lambda)*t; SmartStart uses theta itself and Ignore
// starts immediately.
struct AlgorithmConfig {
  AlgorithmKind algorithm = AlgorithmKind::SmartStart;
  double theta = 2.0;
  double lambda = 1.0;
  SolverKind solver = SolverKind::Exact;

  std::optional<double> rho() const { return solver_rho(solver); }
  void validate() const;
};

// One executed schedule. ssop_start is the algorithm's own threshold
// decision time |R|/(kappa-1) for the final request set (t-hat in traces);
// smartstart_ref_start is the theta-threshold SmartStart would use for the
// same set (t-prime). The actual start also respects arrivals and the
// previous finish: actual_start = max(ssop_start, build_time, previous
// finish).
struct ScheduleRecord {
  ScheduleRoute schedule;
  std::vector<int> request_ids;  // sorted
  double build_time = 0.0;
  Gadget gadget = Gadget::None;
  double ssop_start = 0.0;
  double smartstart_ref_start = 0.0;
  double actual_start = 0.0;
  double finish = 0.0;
};

struct PredictionDecision {
  int schedule_index = 0;
  Gadget gadget = Gadget::Late;
};

struct PredictionLog {
  std::vector<PredictionDecision> decisions;
  bool oracle_fallback = false;
  // Hamming distance to an OracleBest run on the same inputs; -1 until
  // count_mismatches fills it in.
  int mismatches_vs_oracle = -1;
};

// Full state-transition history of one run.
struct Trace {
  AlgorithmConfig config;
  std::vector<ScheduleRecord> schedules;
  double completion_time = 0.0;
  std::size_t requests_total = 0;
  double last_arrival = 0.0;  // t_n
  double eps_f = 0.0;         // |t-hat_f - t_n|
  bool server_working_at_tn = false;
  PredictionLog predictions;
};

class Predictor;

// What the engine hands a predictor when entering the predicting state.
struct PredictionContext {
  int schedule_index = 0;
  double now = 0.0;
  std::vector<int> unserved_ids;
};

// Runs one deterministic simulation. SSOP requires a predictor; the other
// algorithms forbid one. An optional shared RouteCache (matching the
// config's solver) avoids re-solving overlapping request subsets.
Trace simulate(const Instance& instance, const AlgorithmConfig& config,
               Predictor* predictor = nullptr,
               std::shared_ptr<RouteCache> cache = nullptr);

// Decision source for replayed simulations: returns the gadget for the
// given schedule index, or nullopt when the sequence is exhausted (the
// simulation then stops early and reports complete = false). Used by the
// lookahead predictors to explore decision trees.
using DecisionFn =
    std::function<std::optional<Gadget>(const PredictionContext&)>;

struct SimOutcome {
  bool complete = true;
  Trace trace;
};

SimOutcome simulate_partial(const Instance& instance,
                            const AlgorithmConfig& config,
                            const DecisionFn& decide,
                            const std::shared_ptr<RouteCache>& cache);

// Lower-bound game against the adaptive adversary (OLTSP on the line). The
// first schedule's actual start is fed to the adversary as its observation.
struct AdversaryOutcome {
  Trace trace;
  double t1 = 0.0;
  AdaptiveAdversary::KillerInfo killer;
  Instance completed_instance;
};

AdversaryOutcome simulate_adversary(int k, const AlgorithmConfig& config,
                                    Predictor* predictor = nullptr);

std::string trace_to_json_text(const Trace& trace);

}  // namespace olsim

#endif

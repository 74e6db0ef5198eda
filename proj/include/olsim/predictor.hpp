#ifndef OLSIM_PREDICTOR_HPP
#define OLSIM_PREDICTOR_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "olsim/engine.hpp"

namespace olsim {

enum class PredictorKind {
  OracleBest,
  FixedLate,
  FixedEarly,
  RandomFlip,
  AdversarialWorst,
};

// Predictor selection plus the RandomFlip parameters.
struct PredictorSpec {
  PredictorKind kind = PredictorKind::FixedLate;
  double flip_probability = 0.0;  // RandomFlip only, in [0, 1]
  std::uint64_t seed = 0;

  static PredictorSpec oracle_best() { return {PredictorKind::OracleBest}; }
  static PredictorSpec fixed_late() { return {PredictorKind::FixedLate}; }
  static PredictorSpec fixed_early() { return {PredictorKind::FixedEarly}; }
  static PredictorSpec adversarial_worst() {
    return {PredictorKind::AdversarialWorst};
  }
  static PredictorSpec random_flip(double p, std::uint64_t seed) {
    return {PredictorKind::RandomFlip, p, seed};
  }

  // "oracle", "fixed-late", "fixed-early", "worst", "flip:<p>".
  static PredictorSpec parse(const std::string& name, std::uint64_t seed = 0);
  std::string name() const;
};

// Binary decision source for SSOP's predicting state. Owned by exactly one
// run; the engine queries it once per schedule.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual Gadget predict(const PredictionContext& context) = 0;
  // True once a lookahead had to fall back to the one-step greedy rule
  // because the remaining decision tree exceeded the depth cap.
  virtual bool used_fallback() const { return false; }
};

// Branching depth cap for the lookahead predictors (2^12 leaf simulations);
// beyond it the leaf value is evaluated with an all-late continuation and
// the log is flagged.
inline constexpr int kOracleDepthCap = 12;

// Builds a predictor. OracleBest, AdversarialWorst and RandomFlip need the
// full instance to replay decision branches; pass nullptr for adaptive
// sources, in which case those predictors raise PredictorError when
// queried. `cache` may share schedule computations with the main run.
std::unique_ptr<Predictor> make_predictor(
    const PredictorSpec& spec, const Instance* full_instance,
    const AlgorithmConfig& config,
    std::shared_ptr<RouteCache> cache = nullptr);

// Hamming distance between decision sequences aligned by schedule index;
// surplus entries of the longer log count as mismatches.
int count_mismatches(const PredictionLog& log, const PredictionLog& oracle_log);

}  // namespace olsim

#endif

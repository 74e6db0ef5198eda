#include "olsim/predictor.hpp"

#include <algorithm>
#include <cstdio>

#include "olsim/rng.hpp"

namespace olsim {

PredictorSpec PredictorSpec::parse(const std::string& name,
                                   std::uint64_t seed) {
  if (name == "oracle") return oracle_best();
  if (name == "fixed-late" || name == "late") return fixed_late();
  if (name == "fixed-early" || name == "early") return fixed_early();
  if (name == "worst") return adversarial_worst();
  if (name.rfind("flip:", 0) == 0) {
    double p;
    try {
      p = std::stod(name.substr(5));
    } catch (const std::exception&) {
      throw ValidationError("cannot parse flip probability in \"" + name +
                            "\"");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("flip probability must lie in [0, 1]");
    }
    return random_flip(p, seed);
  }
  throw ValidationError("unknown predictor \"" + name + "\"");
}

std::string PredictorSpec::name() const {
  switch (kind) {
    case PredictorKind::OracleBest: return "oracle";
    case PredictorKind::FixedLate: return "fixed-late";
    case PredictorKind::FixedEarly: return "fixed-early";
    case PredictorKind::AdversarialWorst: return "worst";
    case PredictorKind::RandomFlip: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "flip:%g", flip_probability);
      return buf;
    }
  }
  return "?";
}

namespace {

class FixedPredictor : public Predictor {
 public:
  explicit FixedPredictor(Gadget gadget) : gadget_(gadget) {}
  Gadget predict(const PredictionContext&) override { return gadget_; }

 private:
  Gadget gadget_;
};

// Branch-optimal lookahead: simulates both gadget choices to termination,
// with every future decision again chosen by the same rule, and returns the
// argmin (OracleBest) or argmax (AdversarialWorst) of the completion time.
// Ties go to the late-start gadget. Decision subtrees are memoized by
// gadget prefix; beyond kOracleDepthCap branchings the leaf is scored with
// an all-late continuation and the run is flagged.
class LookaheadPredictor : public Predictor {
 public:
  LookaheadPredictor(const Instance* instance, const AlgorithmConfig& config,
                     std::shared_ptr<RouteCache> cache, bool maximize)
      : instance_(instance),
        config_(config),
        cache_(std::move(cache)),
        maximize_(maximize) {
    if (instance_ && !cache_) {
      cache_ = std::make_shared<RouteCache>(*instance_, config_.solver);
    }
  }

  Gadget recommend(const PredictionContext& context) {
    if (!instance_) {
      throw PredictorError(
          "lookahead prediction is undefined against an adaptive adversary: "
          "the remaining instance is not available");
    }
    if (context.schedule_index != static_cast<int>(history_.size())) {
      throw PredictorError("lookahead predictor consulted out of order");
    }
    std::vector<Gadget> prefix = history_;
    prefix.push_back(Gadget::Late);
    const double late = value(prefix, 1).first;
    prefix.back() = Gadget::Early;
    const double early = value(prefix, 1).first;
    if (maximize_) {
      return late >= early ? Gadget::Late : Gadget::Early;
    }
    return late <= early ? Gadget::Late : Gadget::Early;
  }

  // The engine may realize a different gadget than recommended (RandomFlip
  // wraps this class); lookaheads condition on what actually happened.
  void commit(Gadget realized) { history_.push_back(realized); }

  Gadget predict(const PredictionContext& context) override {
    const Gadget g = recommend(context);
    commit(g);
    return g;
  }

  bool used_fallback() const override { return fallback_; }

 private:
  // Completion time of running with `prefix` and optimal/worst decisions
  // beyond it. The bool marks values free of depth-cap fallbacks; only
  // those are memoized.
  std::pair<double, bool> value(std::vector<Gadget>& prefix, int depth) {
    std::string key(prefix.size(), 'L');
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] == Gadget::Early) key[i] = 'E';
    }
    if (auto it = memo_.find(key); it != memo_.end()) {
      return {it->second, true};
    }
    SimOutcome out = simulate_partial(
        *instance_, config_,
        [&](const PredictionContext& ctx) -> std::optional<Gadget> {
          const auto i = static_cast<std::size_t>(ctx.schedule_index);
          if (i < prefix.size()) return prefix[i];
          return std::nullopt;
        },
        cache_);
    double v;
    bool clean = true;
    if (out.complete) {
      v = out.trace.completion_time;
    } else if (depth >= kOracleDepthCap) {
      fallback_ = true;
      clean = false;
      v = all_late_value(prefix);
    } else {
      prefix.push_back(Gadget::Late);
      const auto late = value(prefix, depth + 1);
      prefix.back() = Gadget::Early;
      const auto early = value(prefix, depth + 1);
      prefix.pop_back();
      v = maximize_ ? std::max(late.first, early.first)
                    : std::min(late.first, early.first);
      clean = late.second && early.second;
    }
    if (clean) memo_.emplace(std::move(key), v);
    return {v, clean};
  }

  double all_late_value(const std::vector<Gadget>& prefix) {
    SimOutcome out = simulate_partial(
        *instance_, config_,
        [&](const PredictionContext& ctx) -> std::optional<Gadget> {
          const auto i = static_cast<std::size_t>(ctx.schedule_index);
          return i < prefix.size() ? prefix[i] : Gadget::Late;
        },
        cache_);
    return out.trace.completion_time;
  }

  const Instance* instance_;
  AlgorithmConfig config_;
  std::shared_ptr<RouteCache> cache_;
  bool maximize_;
  std::vector<Gadget> history_;
  std::unordered_map<std::string, double> memo_;
  bool fallback_ = false;
};

// OracleBest with each answer independently inverted with probability p.
class RandomFlipPredictor : public Predictor {
 public:
  RandomFlipPredictor(const Instance* instance, const AlgorithmConfig& config,
                      std::shared_ptr<RouteCache> cache, double p,
                      std::uint64_t seed)
      : inner_(instance, config, std::move(cache), /*maximize=*/false),
        probability_(p),
        rng_(seed) {}

  Gadget predict(const PredictionContext& context) override {
    Gadget g = inner_.recommend(context);
    if (rng_.uniform01() < probability_) {
      g = g == Gadget::Late ? Gadget::Early : Gadget::Late;
    }
    inner_.commit(g);
    return g;
  }

  bool used_fallback() const override { return inner_.used_fallback(); }

 private:
  LookaheadPredictor inner_;
  double probability_;
  Rng rng_;
};

}  // namespace

std::unique_ptr<Predictor> make_predictor(const PredictorSpec& spec,
                                          const Instance* full_instance,
                                          const AlgorithmConfig& config,
                                          std::shared_ptr<RouteCache> cache) {
  switch (spec.kind) {
    case PredictorKind::FixedLate:
      return std::make_unique<FixedPredictor>(Gadget::Late);
    case PredictorKind::FixedEarly:
      return std::make_unique<FixedPredictor>(Gadget::Early);
    case PredictorKind::OracleBest:
      return std::make_unique<LookaheadPredictor>(full_instance, config,
                                                  std::move(cache), false);
    case PredictorKind::AdversarialWorst:
      return std::make_unique<LookaheadPredictor>(full_instance, config,
                                                  std::move(cache), true);
    case PredictorKind::RandomFlip:
      return std::make_unique<RandomFlipPredictor>(
          full_instance, config, std::move(cache), spec.flip_probability,
          spec.seed);
  }
  throw ConfigError("unknown predictor kind");
}

int count_mismatches(const PredictionLog& log,
                     const PredictionLog& oracle_log) {
  const std::size_t common =
      std::min(log.decisions.size(), oracle_log.decisions.size());
  int mismatches = 0;
  for (std::size_t i = 0; i < common; ++i) {
    if (log.decisions[i].gadget != oracle_log.decisions[i].gadget) {
      ++mismatches;
    }
  }
  mismatches += static_cast<int>(
      std::max(log.decisions.size(), oracle_log.decisions.size()) - common);
  return mismatches;
}

}  // namespace olsim

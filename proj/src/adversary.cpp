#include "olsim/adversary.hpp"

#include <cmath>

namespace olsim {

AdaptiveAdversary::AdaptiveAdversary(int k) : k_(k) {
  if (k <= 0) throw AdversaryError("adversary needs k >= 1");
  epsilon_ = 1.0 / static_cast<double>(k);
  scripted_.reserve(static_cast<std::size_t>(k) + 1);
  Request x0;
  x0.id = 0;
  x0.arrival_time = 0.0;
  x0.pickup = Point::line(1.0);
  scripted_.push_back(x0);
  for (int i = 1; i <= k; ++i) {
    Request xi;
    xi.id = i;
    xi.arrival_time = 1.0 + i * epsilon_;
    xi.pickup = Point::line(1.0 - i * epsilon_);
    scripted_.push_back(xi);
  }
}

std::optional<Request> AdaptiveAdversary::next(
    const std::optional<Observation>& observation) {
  if (observation) {
    return observe_first_start(observation->first_schedule_start).request;
  }
  if (next_scripted_ < scripted_.size()) {
    released_.push_back(scripted_[next_scripted_]);
    return scripted_[next_scripted_++];
  }
  return std::nullopt;
}

AdaptiveAdversary::KillerInfo AdaptiveAdversary::observe_first_start(
    double t1) {
  if (finished_) {
    throw AdversaryError("observation after the adversary finished");
  }
  if (!(t1 >= 0.0)) throw AdversaryError("first schedule start must be >= 0");
  KillerInfo info;
  Request killer;
  killer.id = k_ + 1;
  if (t1 < 1.0) {
    info.triggered_case = 1;
    info.analyzed = true;
    killer.pickup = Point::line(1.0);
    killer.arrival_time = 1.0;
  } else if (t1 < 2.0) {
    info.triggered_case = 2;
    int h = static_cast<int>(std::floor((t1 - 1.0) / epsilon_));
    if (h > k_ - 1) h = k_ - 1;  // guard against t1 == 2 rounding
    info.h = h;
    // Only the lower half of the containing interval is analyzed; the same
    // killer is released either way.
    info.analyzed = t1 < 1.0 + h * epsilon_ + epsilon_ / 2.0;
    killer.pickup = Point::line(1.0 - h * epsilon_ - epsilon_ / 2.0);
    killer.arrival_time = 1.0 + h * epsilon_ + epsilon_ / 2.0;
  } else {
    info.triggered_case = 3;
    info.analyzed = true;
    const double delta = epsilon_ / 2.0;  // distinct from every scripted x_i
    killer.pickup = Point::line(1.0 - delta);
    killer.arrival_time = 1.0 + delta;
  }
  info.request = killer;
  released_.push_back(killer);
  killer_ = info;
  finished_ = true;
  return info;
}

Instance AdaptiveAdversary::completed_instance() const {
  if (!finished_) {
    throw AdversaryError("adversary game still running; no killer released");
  }
  std::vector<Request> all = scripted_;
  all.push_back(killer_->request);
  return Instance(MetricSpace::line(), std::move(all), ProblemKind::Oltsp);
}

}  // namespace olsim

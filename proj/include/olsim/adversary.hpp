#ifndef OLSIM_ADVERSARY_HPP
#define OLSIM_ADVERSARY_HPP

#include <optional>
#include <vector>

#include "olsim/instance.hpp"

namespace olsim {

// Adaptive lower-bound opponent for OLTSP on the line. It scripts k+1
// requests — x_0 = (1, t=0) and x_i = (1-i*eps, t=1+i*eps) for i = 1..k with
// eps = 1/k — and, once it observes the start time t1 of the algorithm's
// first schedule, releases exactly one killer request:
//
//   case 1 (t1 < 1):      (1, t=1)
//   case 2 (1 <= t1 < 2): (1-h*eps-eps/2, t=1+h*eps+eps/2) for the h with
//                         1+h*eps <= t1 < 1+(h+1)*eps; the run counts as
//                         "analyzed" only when t1 lies in the lower half
//                         [1+h*eps, 1+h*eps+eps/2) of its interval
//   case 3 (t1 >= 2):     (1-delta, t=1+delta) with delta = eps/2
//
// The offline optimum of every completed instance is 2 (sweep to 1, serve
// the rest on the way back).
class AdaptiveAdversary {
 public:
  struct Observation {
    double first_schedule_start = 0.0;  // t1
  };

  struct KillerInfo {
    Request request;
    int triggered_case = 0;  // 1, 2 or 3
    int h = -1;              // case 2 only
    bool analyzed = false;
  };

  explicit AdaptiveAdversary(int k);

  int k() const { return k_; }
  double epsilon() const { return epsilon_; }
  bool finished() const { return finished_; }

  // The k+1 scripted requests in arrival order.
  const std::vector<Request>& scripted() const { return scripted_; }

  // Streams the next scripted request, or the killer once the first
  // schedule start has been observed. Pass the observation exactly once;
  // observing after the adversary finished raises AdversaryError.
  std::optional<Request> next(const std::optional<Observation>& observation);

  // Direct form of the killer reaction; finishes the adversary.
  KillerInfo observe_first_start(double t1);

  const std::vector<Request>& released_so_far() const { return released_; }
  const std::optional<KillerInfo>& killer() const { return killer_; }

  // The full instance (scripted + killer) once the game ended.
  Instance completed_instance() const;

 private:
  int k_;
  double epsilon_;
  std::vector<Request> scripted_;
  std::size_t next_scripted_ = 0;
  std::vector<Request> released_;
  std::optional<KillerInfo> killer_;
  bool finished_ = false;
};

}  // namespace olsim

#endif

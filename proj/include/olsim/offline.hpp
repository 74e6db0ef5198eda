#ifndef OLSIM_OFFLINE_HPP
#define OLSIM_OFFLINE_HPP

#include <string>
#include <vector>

#include "olsim/instance.hpp"

namespace olsim {

enum class OptMethod { DP, BruteForce };

// Offline optimum: minimum completion time serving every request no earlier
// than its release and returning to the origin.
struct OptResult {
  double completion_time = 0.0;
  std::vector<int> order;
  OptMethod method = OptMethod::DP;
};

inline constexpr std::size_t kOptDpCap = 15;
inline constexpr std::size_t kOptBruteCap = 9;

// Completion time of serving `order` front to back under the release-time
// recurrence T_i = max(T_{i-1} + d(prev, a_i), t_i) (+ d(a_i, b_i) for
// dial-a-ride), plus the return to the origin.
double replay_order(const Instance& instance, const std::vector<int>& order);

// Subset dynamic programming over (served set, last request). Keeping the
// earliest feasible clock per state is valid because the recurrence is
// monotone in the incoming time.
OptResult opt_dp(const Instance& instance);

// Full permutation enumeration; independence oracle for opt_dp.
OptResult opt_bruteforce(const Instance& instance);

}  // namespace olsim

#endif

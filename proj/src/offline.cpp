#include "olsim/offline.hpp"

#include <algorithm>
#include <limits>

namespace olsim {

namespace {

const Point& end_position(const Request& r, ProblemKind kind) {
  return kind == ProblemKind::Oldarp ? *r.dropoff : r.pickup;
}

// Clock after serving r when departing `from` at time `clock`. Waiting
// happens co-located at the pickup: arrive early, wait for the release.
double step(const MetricSpace& space, ProblemKind kind, const Point& from,
            double clock, const Request& r) {
  double t = std::max(clock + space.distance(from, r.pickup), r.arrival_time);
  if (kind == ProblemKind::Oldarp) {
    t += space.distance(r.pickup, *r.dropoff);
  }
  return t;
}

}  // namespace

double replay_order(const Instance& instance, const std::vector<int>& order) {
  const MetricSpace& space = instance.space();
  const ProblemKind kind = instance.problem_kind();
  Point pos = space.origin();
  double clock = 0.0;
  for (int id : order) {
    const Request* req = nullptr;
    for (const Request& r : instance.requests()) {
      if (r.id == id) {
        req = &r;
        break;
      }
    }
    if (!req) {
      throw ValidationError("order references unknown request id " +
                            std::to_string(id));
    }
    clock = step(space, kind, pos, clock, *req);
    pos = end_position(*req, kind);
  }
  return clock + space.distance(pos, space.origin());
}

OptResult opt_dp(const Instance& instance) {
  const std::size_t n = instance.size();
  if (n > kOptDpCap) {
    throw CapError("offline optimum DP capped at " + std::to_string(kOptDpCap) +
                   " requests (got " + std::to_string(n) + ")");
  }
  OptResult result;
  result.method = OptMethod::DP;
  if (n == 0) return result;

  const MetricSpace& space = instance.space();
  const ProblemKind kind = instance.problem_kind();
  const std::vector<Request>& reqs = instance.requests();
  const Point origin = space.origin();
  const std::uint32_t full = (1u << n) - 1u;
  const double inf = std::numeric_limits<double>::infinity();

  // best[mask][last]: earliest clock after serving exactly `mask`, ending
  // at last's end position.
  std::vector<std::vector<double>> best(full + 1u,
                                        std::vector<double>(n, inf));
  std::vector<std::vector<int>> parent(full + 1u, std::vector<int>(n, -1));
  for (std::size_t j = 0; j < n; ++j) {
    best[1u << j][j] = step(space, kind, origin, 0.0, reqs[j]);
  }
  for (std::uint32_t mask = 1u; mask <= full; ++mask) {
    for (std::size_t last = 0; last < n; ++last) {
      const double t = best[mask][last];
      if (t == inf || !(mask & (1u << last))) continue;
      const Point& from = end_position(reqs[last], kind);
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (1u << j)) continue;
        const double nt = step(space, kind, from, t, reqs[j]);
        const std::uint32_t nm = mask | (1u << j);
        if (nt < best[nm][j]) {
          best[nm][j] = nt;
          parent[nm][j] = static_cast<int>(last);
        }
      }
    }
  }
  double best_total = inf;
  std::size_t best_last = 0;
  for (std::size_t last = 0; last < n; ++last) {
    const double total =
        best[full][last] + space.distance(end_position(reqs[last], kind),
                                          origin);
    if (total < best_total) {
      best_total = total;
      best_last = last;
    }
  }
  result.completion_time = best_total;
  std::vector<int> order;
  std::uint32_t mask = full;
  int last = static_cast<int>(best_last);
  while (last >= 0) {
    order.push_back(reqs[static_cast<std::size_t>(last)].id);
    const int prev = parent[mask][static_cast<std::size_t>(last)];
    mask &= ~(1u << last);
    last = prev;
  }
  std::reverse(order.begin(), order.end());
  result.order = std::move(order);
  result.completion_time = replay_order(instance, result.order);
  return result;
}

OptResult opt_bruteforce(const Instance& instance) {
  const std::size_t n = instance.size();
  if (n > kOptBruteCap) {
    throw CapError("brute-force optimum capped at " +
                   std::to_string(kOptBruteCap) + " requests (got " +
                   std::to_string(n) + ")");
  }
  OptResult result;
  result.method = OptMethod::BruteForce;
  if (n == 0) return result;
  std::vector<int> ids;
  ids.reserve(n);
  for (const Request& r : instance.requests()) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_order;
  do {
    const double total = replay_order(instance, ids);
    if (total < best) {
      best = total;
      best_order = ids;
    }
  } while (std::next_permutation(ids.begin(), ids.end()));
  result.completion_time = best;
  result.order = std::move(best_order);
  return result;
}

}  // namespace olsim

#ifndef OLSIM_SCHEDULE_HPP
#define OLSIM_SCHEDULE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "olsim/instance.hpp"

namespace olsim {

enum class SolverKind { Exact, Christofides, NearestNeighbor };

std::string to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& name);

// Approximation guarantee of a solver: 1.0 for Exact, 1.5 for Christofides,
// none for NearestNeighbor.
std::optional<double> solver_rho(SolverKind kind);

// An origin-rooted closed route over a fixed request set.
struct ScheduleRoute {
  std::vector<int> order;  // request ids in service order
  double length = 0.0;
  SolverKind solver = SolverKind::Exact;
  std::optional<double> rho_guarantee = 1.0;
};

inline constexpr std::size_t kExactRouteCap = 15;
inline constexpr std::size_t kMatchingCap = 16;

// Walk cost of serving `order` starting and ending at the origin. OLTSP
// visits pickups only; OLDARP rides pickup -> dropoff before the next
// pickup (capacity-1 semantics). `order` must be a permutation of the
// request ids.
double route_length(const MetricSpace& space,
                    const std::vector<Request>& requests,
                    const std::vector<int>& order, ProblemKind problem_kind);

// Minimum-length schedule via dynamic programming over (visited set, last
// request). Ties broken toward the lexicographically smallest id order.
// Throws CapError above kExactRouteCap.
ScheduleRoute solve_exact(const MetricSpace& space,
                          const std::vector<Request>& requests,
                          ProblemKind problem_kind);

// MST + exact minimum-weight perfect matching on odd-degree vertices +
// Euler circuit + shortcutting. OLTSP only; guarantees length within 1.5x
// of optimal. Throws CapError when the matching exceeds kMatchingCap odd
// vertices.
ScheduleRoute solve_christofides(const MetricSpace& space,
                                 const std::vector<Request>& requests);

// Greedy nearest-unserved walk; no guarantee.
ScheduleRoute solve_nearest_neighbor(const MetricSpace& space,
                                     const std::vector<Request>& requests,
                                     ProblemKind problem_kind);

ScheduleRoute solve_schedule(SolverKind solver, const MetricSpace& space,
                             const std::vector<Request>& requests,
                             ProblemKind problem_kind);

// Christofides internals exposed for verification: the Euler circuit length
// bounds the shortcut tour from above.
struct ChristofidesDetail {
  ScheduleRoute route;
  double mst_length = 0.0;
  double matching_length = 0.0;
  double euler_length = 0.0;
};
ChristofidesDetail solve_christofides_detail(
    const MetricSpace& space, const std::vector<Request>& requests);

// Memoizes schedules by request-id subset for one (instance, solver,
// problem kind). Simulations rebuild schedules for overlapping subsets on
// every arrival; the oracle predictors replay whole runs. Subsets are keyed
// by a bitmask over the instance's request indices.
class RouteCache {
 public:
  RouteCache(const Instance& instance, SolverKind solver);

  const ScheduleRoute& solve(const std::vector<int>& request_ids);
  SolverKind solver() const { return solver_; }

 private:
  const Instance* instance_;
  SolverKind solver_;
  std::unordered_map<int, std::size_t> index_of_id_;
  std::unordered_map<std::uint64_t, ScheduleRoute> by_mask_;
};

}  // namespace olsim

#endif

#include "olsim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace olsim {

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Exact: return "exact";
    case SolverKind::Christofides: return "christofides";
    case SolverKind::NearestNeighbor: return "nn";
  }
  return "?";
}

SolverKind solver_kind_from_string(const std::string& name) {
  if (name == "exact") return SolverKind::Exact;
  if (name == "christofides") return SolverKind::Christofides;
  if (name == "nn" || name == "nearest-neighbor")
    return SolverKind::NearestNeighbor;
  throw ValidationError("unknown solver \"" + name + "\"");
}

std::optional<double> solver_rho(SolverKind kind) {
  switch (kind) {
    case SolverKind::Exact: return 1.0;
    case SolverKind::Christofides: return 1.5;
    case SolverKind::NearestNeighbor: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

const Request& request_by_id(const std::vector<Request>& requests, int id) {
  for (const Request& r : requests) {
    if (r.id == id) return r;
  }
  throw ValidationError("order references unknown request id " +
                        std::to_string(id));
}

// Position the server occupies after serving a request.
const Point& end_position(const Request& r, ProblemKind kind) {
  return kind == ProblemKind::Oldarp ? *r.dropoff : r.pickup;
}

// Leg cost of serving one request from `from`.
double serve_cost(const MetricSpace& space, const Point& from,
                  const Request& r, ProblemKind kind) {
  double c = space.distance(from, r.pickup);
  if (kind == ProblemKind::Oldarp) {
    c += space.distance(r.pickup, *r.dropoff);
  }
  return c;
}

}  // namespace

double route_length(const MetricSpace& space,
                    const std::vector<Request>& requests,
                    const std::vector<int>& order, ProblemKind problem_kind) {
  if (order.size() != requests.size()) {
    throw ValidationError("order is not a permutation of the request set");
  }
  std::vector<int> sorted(order);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("order is not a permutation of the request set");
  }
  Point pos = space.origin();
  double total = 0.0;
  for (int id : order) {
    const Request& r = request_by_id(requests, id);
    total += serve_cost(space, pos, r, problem_kind);
    pos = end_position(r, problem_kind);
  }
  total += space.distance(pos, space.origin());
  return total;
}

ScheduleRoute solve_exact(const MetricSpace& space,
                          const std::vector<Request>& requests,
                          ProblemKind problem_kind) {
  const std::size_t n = requests.size();
  if (n > kExactRouteCap) {
    throw CapError("exact schedule solver capped at " +
                   std::to_string(kExactRouteCap) +
                   " requests (got " + std::to_string(n) +
                   "); use the christofides solver");
  }
  ScheduleRoute result;
  result.solver = SolverKind::Exact;
  result.rho_guarantee = 1.0;
  if (n == 0) return result;

  // Requests in id order so that the greedy reconstruction below yields the
  // lexicographically smallest optimal id sequence.
  std::vector<const Request*> reqs;
  reqs.reserve(n);
  for (const Request& r : requests) reqs.push_back(&r);
  std::sort(reqs.begin(), reqs.end(),
            [](const Request* a, const Request* b) { return a->id < b->id; });

  const Point origin = space.origin();
  const std::uint32_t full = (1u << n) - 1u;
  const double inf = std::numeric_limits<double>::infinity();

  // cost_to_go[mask][last]: cheapest way to serve the requests outside
  // `mask` and return to the origin, starting from last's end position.
  std::vector<std::vector<double>> cost_to_go(
      full + 1u, std::vector<double>(n, inf));
  for (std::size_t last = 0; last < n; ++last) {
    cost_to_go[full][last] =
        space.distance(end_position(*reqs[last], problem_kind), origin);
  }
  for (std::uint32_t mask = full - 1u; mask + 1u != 0u; --mask) {
    for (std::size_t last = 0; last < n; ++last) {
      if (!(mask & (1u << last))) continue;
      const Point& from = end_position(*reqs[last], problem_kind);
      double best = inf;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (1u << j)) continue;
        const double c = serve_cost(space, from, *reqs[j], problem_kind) +
                         cost_to_go[mask | (1u << j)][j];
        if (c < best) best = c;
      }
      cost_to_go[mask][last] = best;
    }
    if (mask == 0u) break;
  }

  // Greedy front-to-back reconstruction: at each step take the smallest-id
  // request whose continuation is optimal. Strict `<` keeps the first
  // minimum, which is the lexicographically smallest among exact ties.
  std::vector<int> order;
  order.reserve(n);
  std::uint32_t mask = 0u;
  Point pos = origin;
  double remaining = inf;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = serve_cost(space, pos, *reqs[j], problem_kind) +
                     cost_to_go[1u << j][j];
    if (c < remaining) remaining = c;
  }
  result.length = remaining;
  while (mask != full) {
    std::size_t pick = n;
    double best = inf;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) continue;
      const double c = serve_cost(space, pos, *reqs[j], problem_kind) +
                       cost_to_go[mask | (1u << j)][j];
      if (c < best) {
        best = c;
        pick = j;
      }
    }
    order.push_back(reqs[pick]->id);
    pos = end_position(*reqs[pick], problem_kind);
    mask |= (1u << pick);
  }
  result.order = std::move(order);
  // Recompute so the reported length is exactly the walk cost of `order`.
  result.length = route_length(space, requests, result.order, problem_kind);
  return result;
}

ChristofidesDetail solve_christofides_detail(
    const MetricSpace& space, const std::vector<Request>& requests) {
  for (const Request& r : requests) {
    if (r.dropoff) {
      throw ValidationError(
          "christofides handles oltsp only; no 1.5-guarantee exists for "
          "dial-a-ride schedules");
    }
  }
  ChristofidesDetail detail;
  detail.route.solver = SolverKind::Christofides;
  detail.route.rho_guarantee = 1.5;
  const std::size_t m = requests.size();
  if (m == 0) return detail;

  // Node 0 is the origin; node i+1 is request i (duplicates kept distinct).
  const std::size_t nodes = m + 1;
  std::vector<Point> pos(nodes);
  pos[0] = space.origin();
  std::vector<const Request*> reqs;
  reqs.reserve(m);
  for (const Request& r : requests) reqs.push_back(&r);
  std::sort(reqs.begin(), reqs.end(),
            [](const Request* a, const Request* b) { return a->id < b->id; });
  for (std::size_t i = 0; i < m; ++i) pos[i + 1] = reqs[i]->pickup;

  std::vector<std::vector<double>> d(nodes, std::vector<double>(nodes, 0.0));
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = i + 1; j < nodes; ++j) {
      d[i][j] = d[j][i] = space.distance(pos[i], pos[j]);
    }
  }

  // Prim MST rooted at the origin; ties resolved toward smaller indices.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<bool> in_tree(nodes, false);
  std::vector<double> key(nodes, inf);
  std::vector<std::size_t> parent(nodes, 0);
  key[0] = 0.0;
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (std::size_t iter = 0; iter < nodes; ++iter) {
    std::size_t u = nodes;
    for (std::size_t v = 0; v < nodes; ++v) {
      if (!in_tree[v] && (u == nodes || key[v] < key[u])) u = v;
    }
    in_tree[u] = true;
    if (u != 0) {
      adj[u].push_back(parent[u]);
      adj[parent[u]].push_back(u);
      detail.mst_length += d[u][parent[u]];
    }
    for (std::size_t v = 0; v < nodes; ++v) {
      if (!in_tree[v] && d[u][v] < key[v]) {
        key[v] = d[u][v];
        parent[v] = u;
      }
    }
  }

  std::vector<std::size_t> odd;
  for (std::size_t v = 0; v < nodes; ++v) {
    if (adj[v].size() % 2 == 1) odd.push_back(v);
  }
  if (odd.size() > kMatchingCap) {
    throw CapError("exact matching capped at " + std::to_string(kMatchingCap) +
                   " odd-degree vertices (got " + std::to_string(odd.size()) +
                   ")");
  }

  // Exact minimum-weight perfect matching on the odd vertices by subset DP:
  // the lowest set vertex of each mask pairs with every candidate partner.
  const std::size_t k = odd.size();
  if (k > 0) {
    const std::uint32_t ofull = (1u << k) - 1u;
    std::vector<double> dp(ofull + 1u, inf);
    std::vector<int> choice(ofull + 1u, -1);
    dp[0] = 0.0;
    for (std::uint32_t mask = 1u; mask <= ofull; ++mask) {
      if (__builtin_popcount(mask) % 2 != 0) continue;
      std::size_t i = 0;
      while (!(mask & (1u << i))) ++i;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (!(mask & (1u << j))) continue;
        const double c =
            dp[mask ^ (1u << i) ^ (1u << j)] + d[odd[i]][odd[j]];
        if (c < dp[mask]) {
          dp[mask] = c;
          choice[mask] = static_cast<int>(j);
        }
      }
    }
    detail.matching_length = dp[ofull];
    std::uint32_t mask = ofull;
    while (mask != 0u) {
      std::size_t i = 0;
      while (!(mask & (1u << i))) ++i;
      const std::size_t j = static_cast<std::size_t>(choice[mask]);
      adj[odd[i]].push_back(odd[j]);
      adj[odd[j]].push_back(odd[i]);
      mask &= ~((1u << i) | (1u << j));
    }
  }

  // Hierholzer Euler circuit over the MST+matching multigraph, rooted at
  // the origin node.
  struct Edge {
    std::size_t a, b;
    bool used = false;
  };
  std::vector<Edge> elist;
  std::vector<std::vector<std::size_t>> incident(nodes);
  for (std::size_t v = 0; v < nodes; ++v) {
    std::vector<std::size_t> ws = adj[v];
    std::sort(ws.begin(), ws.end());
    for (std::size_t w : ws) {
      if (v <= w) {
        incident[v].push_back(elist.size());
        incident[w].push_back(elist.size());
        elist.push_back({v, w, false});
      }
    }
  }
  std::vector<std::size_t> cursor(nodes, 0);
  std::vector<std::size_t> stack = {0};
  std::vector<std::size_t> circuit;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    bool advanced = false;
    while (cursor[v] < incident[v].size()) {
      Edge& e = elist[incident[v][cursor[v]]];
      if (e.used) {
        ++cursor[v];
        continue;
      }
      e.used = true;
      stack.push_back(e.a == v ? e.b : e.a);
      advanced = true;
      break;
    }
    if (!advanced) {
      circuit.push_back(v);
      stack.pop_back();
    }
  }
  detail.euler_length = 0.0;
  for (std::size_t i = 0; i + 1 < circuit.size(); ++i) {
    detail.euler_length += d[circuit[i]][circuit[i + 1]];
  }

  // Shortcut repeated nodes; triangle inequality keeps this no longer than
  // the circuit.
  std::vector<bool> seen(nodes, false);
  std::vector<int> order;
  for (std::size_t v : circuit) {
    if (v == 0 || seen[v]) continue;
    seen[v] = true;
    order.push_back(reqs[v - 1]->id);
  }
  detail.route.order = std::move(order);
  detail.route.length =
      route_length(space, requests, detail.route.order, ProblemKind::Oltsp);
  return detail;
}

ScheduleRoute solve_christofides(const MetricSpace& space,
                                 const std::vector<Request>& requests) {
  return solve_christofides_detail(space, requests).route;
}

ScheduleRoute solve_nearest_neighbor(const MetricSpace& space,
                                     const std::vector<Request>& requests,
                                     ProblemKind problem_kind) {
  ScheduleRoute result;
  result.solver = SolverKind::NearestNeighbor;
  result.rho_guarantee = std::nullopt;
  std::vector<const Request*> left;
  left.reserve(requests.size());
  for (const Request& r : requests) left.push_back(&r);
  std::sort(left.begin(), left.end(),
            [](const Request* a, const Request* b) { return a->id < b->id; });
  Point pos = space.origin();
  while (!left.empty()) {
    std::size_t pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < left.size(); ++i) {
      const double c = space.distance(pos, left[i]->pickup);
      if (c < best) {
        best = c;
        pick = i;
      }
    }
    result.order.push_back(left[pick]->id);
    pos = end_position(*left[pick], problem_kind);
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  result.length = route_length(space, requests, result.order, problem_kind);
  return result;
}

ScheduleRoute solve_schedule(SolverKind solver, const MetricSpace& space,
                             const std::vector<Request>& requests,
                             ProblemKind problem_kind) {
  switch (solver) {
    case SolverKind::Exact: return solve_exact(space, requests, problem_kind);
    case SolverKind::Christofides: return solve_christofides(space, requests);
    case SolverKind::NearestNeighbor:
      return solve_nearest_neighbor(space, requests, problem_kind);
  }
  throw ConfigError("unknown solver");
}

RouteCache::RouteCache(const Instance& instance, SolverKind solver)
    : instance_(&instance), solver_(solver) {
  if (instance.size() > 64) {
    throw CapError("route cache supports up to 64 requests per instance");
  }
  for (std::size_t i = 0; i < instance.size(); ++i) {
    index_of_id_[instance.requests()[i].id] = i;
  }
}

const ScheduleRoute& RouteCache::solve(const std::vector<int>& request_ids) {
  std::uint64_t mask = 0;
  for (int id : request_ids) {
    mask |= std::uint64_t{1} << index_of_id_.at(id);
  }
  auto it = by_mask_.find(mask);
  if (it != by_mask_.end()) return it->second;
  std::vector<Request> subset;
  subset.reserve(request_ids.size());
  for (std::size_t i = 0; i < instance_->size(); ++i) {
    if (mask & (std::uint64_t{1} << i)) {
      subset.push_back(instance_->requests()[i]);
    }
  }
  ScheduleRoute route = solve_schedule(solver_, instance_->space(), subset,
                                       instance_->problem_kind());
  return by_mask_.emplace(mask, std::move(route)).first->second;
}

}  // namespace olsim

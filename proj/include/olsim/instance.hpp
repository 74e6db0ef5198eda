#ifndef OLSIM_INSTANCE_HPP
#define OLSIM_INSTANCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "olsim/metric.hpp"

namespace olsim {

enum class ProblemKind { Oltsp, Oldarp };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

// One online demand: arrives at `pickup` at `arrival_time`; dial-a-ride
// requests additionally carry a dropoff.
struct Request {
  int id = 0;
  double arrival_time = 0.0;
  Point pickup;
  std::optional<Point> dropoff;

  bool operator==(const Request& o) const {
    return id == o.id && arrival_time == o.arrival_time &&
           pickup == o.pickup && dropoff == o.dropoff;
  }
};

// An ordered request sequence over a metric space. Requests are kept sorted
// by (arrival_time, id); ids are unique; all requests agree on the presence
// of dropoffs, matching the problem kind.
class Instance {
 public:
  Instance(MetricSpace space, std::vector<Request> requests,
           ProblemKind problem_kind);

  const MetricSpace& space() const { return space_; }
  const std::vector<Request>& requests() const { return requests_; }
  ProblemKind problem_kind() const { return problem_kind_; }
  std::size_t size() const { return requests_.size(); }
  bool empty() const { return requests_.empty(); }

  // Arrival time of the last request (t_n); 0 for empty instances.
  double last_arrival() const {
    return requests_.empty() ? 0.0 : requests_.back().arrival_time;
  }

  bool operator==(const Instance& o) const;

 private:
  MetricSpace space_;
  std::vector<Request> requests_;
  ProblemKind problem_kind_;
};

// n requests with arrival times uniform on [0, horizon] and positions
// uniform in [-1,1] (Line), the unit box (Plane), or over the nodes of a
// random closed metric (Explicit, `explicit_nodes` nodes). Deterministic
// per seed; requests are re-identified 0..n-1 in arrival order.
Instance generate_uniform(std::uint64_t seed, std::size_t n,
                          SpaceKind space_kind, double horizon,
                          ProblemKind problem_kind,
                          std::size_t explicit_nodes = 8);

// Same draw over a caller-provided space (for explicit matrices loaded
// from CSV).
Instance generate_uniform_over(MetricSpace space, std::uint64_t seed,
                               std::size_t n, double horizon,
                               ProblemKind problem_kind);

// JSON serialization. The schema is
//   {"problem": "oltsp"|"oldarp",
//    "space": {"kind": "line"|"plane"|"explicit",
//              "matrix": [[...]] (explicit only),
//              "origin": int (explicit only)},
//    "requests": [{"id": int, "t": real,
//                  "a": [real] | [real, real] | int,
//                  "b": like "a", or null}]}
// Doubles round-trip exactly. Malformed files raise ValidationError naming
// the first bad field.
Instance read_instance(const std::string& path);
void write_instance(const Instance& instance, const std::string& path);
Instance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const Instance& instance);

}  // namespace olsim

#endif

#include "olsim/instance.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "olsim/rng.hpp"

namespace olsim {

using ordered_json = nlohmann::ordered_json;

std::string to_string(ProblemKind kind) {
  return kind == ProblemKind::Oltsp ? "oltsp" : "oldarp";
}

ProblemKind problem_kind_from_string(const std::string& name) {
  if (name == "oltsp") return ProblemKind::Oltsp;
  if (name == "oldarp") return ProblemKind::Oldarp;
  throw ValidationError("unknown problem kind \"" + name + "\"");
}

namespace {

void check_point(const MetricSpace& space, const Point& p, int request_id,
                 const char* field) {
  if (p.kind != space.kind()) {
    throw ValidationError("request " + std::to_string(request_id) + " " +
                          field + " does not belong to the " +
                          to_string(space.kind()) + " space");
  }
  if (space.kind() == SpaceKind::Explicit && p.node >= space.size()) {
    throw ValidationError("request " + std::to_string(request_id) + " " +
                          field + " node " + std::to_string(p.node) +
                          " out of range");
  }
}

}  // namespace

Instance::Instance(MetricSpace space, std::vector<Request> requests,
                   ProblemKind problem_kind)
    : space_(std::move(space)),
      requests_(std::move(requests)),
      problem_kind_(problem_kind) {
  std::stable_sort(requests_.begin(), requests_.end(),
                   [](const Request& a, const Request& b) {
                     if (a.arrival_time != b.arrival_time)
                       return a.arrival_time < b.arrival_time;
                     return a.id < b.id;
                   });
  const bool wants_dropoff = problem_kind_ == ProblemKind::Oldarp;
  for (std::size_t i = 0; i < requests_.size(); ++i) {
    const Request& r = requests_[i];
    if (!(r.arrival_time >= 0.0)) {
      throw ValidationError("request " + std::to_string(r.id) +
                            " has negative arrival time");
    }
    if (r.dropoff.has_value() != wants_dropoff) {
      throw ValidationError(
          "request " + std::to_string(r.id) +
          (wants_dropoff ? " lacks a dropoff in an oldarp instance"
                         : " carries a dropoff in an oltsp instance"));
    }
    check_point(space_, r.pickup, r.id, "pickup");
    if (r.dropoff) check_point(space_, *r.dropoff, r.id, "dropoff");
    if (i > 0 && requests_[i - 1].id == r.id) {
      throw ValidationError("duplicate request id " + std::to_string(r.id));
    }
  }
  // Unique ids, not just unique among sort-neighbours.
  std::vector<int> ids;
  ids.reserve(requests_.size());
  for (const Request& r : requests_) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ValidationError("duplicate request ids");
  }
}

bool Instance::operator==(const Instance& o) const {
  if (problem_kind_ != o.problem_kind_) return false;
  if (space_.kind() != o.space_.kind()) return false;
  if (space_.kind() == SpaceKind::Explicit &&
      (space_.matrix() != o.space_.matrix() ||
       space_.origin_index() != o.space_.origin_index()))
    return false;
  return requests_ == o.requests_;
}

Instance generate_uniform(std::uint64_t seed, std::size_t n,
                          SpaceKind space_kind, double horizon,
                          ProblemKind problem_kind,
                          std::size_t explicit_nodes) {
  MetricSpace space = space_kind == SpaceKind::Line    ? MetricSpace::line()
                      : space_kind == SpaceKind::Plane ? MetricSpace::plane()
                      : random_metric_space(seed ^ 0x9e3779b97f4a7c15ull,
                                            explicit_nodes);
  return generate_uniform_over(std::move(space), seed, n, horizon,
                               problem_kind);
}

Instance generate_uniform_over(MetricSpace space, std::uint64_t seed,
                               std::size_t n, double horizon,
                               ProblemKind problem_kind) {
  if (!(horizon > 0.0)) throw ValidationError("horizon must be positive");
  Rng rng(seed);
  const SpaceKind space_kind = space.kind();
  auto draw_point = [&]() {
    switch (space_kind) {
      case SpaceKind::Line: return Point::line(rng.uniform(-1.0, 1.0));
      case SpaceKind::Plane:
        return Point::plane(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
      case SpaceKind::Explicit:
        return Point::at_node(static_cast<std::size_t>(
            rng.below(static_cast<std::uint64_t>(space.size()))));
    }
    return Point::line(0.0);
  };
  std::vector<Request> requests;
  requests.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Request r;
    r.arrival_time = rng.uniform(0.0, horizon);
    r.pickup = draw_point();
    if (problem_kind == ProblemKind::Oldarp) r.dropoff = draw_point();
    requests.push_back(r);
  }
  std::stable_sort(requests.begin(), requests.end(),
                   [](const Request& a, const Request& b) {
                     return a.arrival_time < b.arrival_time;
                   });
  for (std::size_t i = 0; i < requests.size(); ++i) {
    requests[i].id = static_cast<int>(i);
  }
  return Instance(std::move(space), std::move(requests), problem_kind);
}

namespace {

ordered_json point_to_json(const Point& p) {
  switch (p.kind) {
    case SpaceKind::Line: return ordered_json::array({p.x});
    case SpaceKind::Plane: return ordered_json::array({p.x, p.y});
    case SpaceKind::Explicit: return ordered_json(p.node);
  }
  return ordered_json();
}

Point point_from_json(const ordered_json& j, SpaceKind kind, int request_id,
                      const char* field) {
  const std::string where =
      std::string(field) + " at request " + std::to_string(request_id);
  if (kind == SpaceKind::Explicit) {
    if (!j.is_number_integer()) {
      throw ValidationError("field " + where + " must be a node index");
    }
    return Point::at_node(j.get<std::size_t>());
  }
  if (!j.is_array()) {
    throw ValidationError("field " + where + " must be a coordinate array");
  }
  if (kind == SpaceKind::Line) {
    if (j.size() != 1 || !j[0].is_number()) {
      throw ValidationError("field " + where + " must hold one coordinate");
    }
    return Point::line(j[0].get<double>());
  }
  if (j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("field " + where + " must hold two coordinates");
  }
  return Point::plane(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

std::string instance_to_json_text(const Instance& instance) {
  ordered_json j;
  j["problem"] = to_string(instance.problem_kind());
  ordered_json space;
  space["kind"] = to_string(instance.space().kind());
  if (instance.space().kind() == SpaceKind::Explicit) {
    space["matrix"] = instance.space().matrix();
    space["origin"] = instance.space().origin_index();
  }
  j["space"] = std::move(space);
  ordered_json requests = ordered_json::array();
  for (const Request& r : instance.requests()) {
    ordered_json rj;
    rj["id"] = r.id;
    rj["t"] = r.arrival_time;
    rj["a"] = point_to_json(r.pickup);
    rj["b"] = r.dropoff ? point_to_json(*r.dropoff) : ordered_json(nullptr);
    requests.push_back(std::move(rj));
  }
  j["requests"] = std::move(requests);
  return j.dump(2) + "\n";
}

Instance instance_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("problem")) throw ValidationError("missing field problem");
  if (!j["problem"].is_string()) {
    throw ValidationError("field problem must be a string");
  }
  const ProblemKind kind =
      problem_kind_from_string(j["problem"].get<std::string>());

  if (!j.contains("space")) throw ValidationError("missing field space");
  const auto& sj = j["space"];
  if (!sj.is_object() || !sj.contains("kind") || !sj["kind"].is_string()) {
    throw ValidationError("missing field space.kind");
  }
  const SpaceKind skind = space_kind_from_string(sj["kind"].get<std::string>());
  MetricSpace space = MetricSpace::line();
  if (skind == SpaceKind::Plane) {
    space = MetricSpace::plane();
  } else if (skind == SpaceKind::Explicit) {
    if (!sj.contains("matrix")) {
      throw ValidationError("missing field space.matrix");
    }
    std::vector<std::vector<double>> matrix;
    try {
      matrix = sj["matrix"].get<std::vector<std::vector<double>>>();
    } catch (const std::exception&) {
      throw ValidationError("field space.matrix must be a square array");
    }
    std::size_t origin = 0;
    if (sj.contains("origin") && !sj["origin"].is_null()) {
      if (!sj["origin"].is_number_integer()) {
        throw ValidationError("field space.origin must be an integer");
      }
      origin = sj["origin"].get<std::size_t>();
    }
    space = MetricSpace::explicit_matrix(std::move(matrix), origin);
  }

  if (!j.contains("requests")) throw ValidationError("missing field requests");
  if (!j["requests"].is_array()) {
    throw ValidationError("field requests must be an array");
  }
  std::vector<Request> requests;
  int index = 0;
  for (const auto& rj : j["requests"]) {
    if (!rj.is_object()) {
      throw ValidationError("request " + std::to_string(index) +
                            " must be an object");
    }
    Request r;
    if (!rj.contains("id") || !rj["id"].is_number_integer()) {
      throw ValidationError("missing field id at request " +
                            std::to_string(index));
    }
    r.id = rj["id"].get<int>();
    if (!rj.contains("t") || !rj["t"].is_number()) {
      throw ValidationError("missing field arrival_time at request " +
                            std::to_string(index));
    }
    r.arrival_time = rj["t"].get<double>();
    if (!rj.contains("a")) {
      throw ValidationError("missing field pickup at request " +
                            std::to_string(index));
    }
    r.pickup = point_from_json(rj["a"], skind, index, "pickup");
    if (rj.contains("b") && !rj["b"].is_null()) {
      r.dropoff = point_from_json(rj["b"], skind, index, "dropoff");
    }
    requests.push_back(std::move(r));
    ++index;
  }
  return Instance(std::move(space), std::move(requests), kind);
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return instance_from_json_text(text);
}

void write_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  out << instance_to_json_text(instance);
  if (!out) throw ValidationError("failed writing instance to " + path);
}

}  // namespace olsim

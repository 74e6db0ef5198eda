#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "olsim/olsim.hpp"

namespace py = pybind11;
using namespace olsim;

namespace {

Trace simulate_py(const Instance& instance, const AlgorithmConfig& config,
                  const std::string& predictor, std::uint64_t predictor_seed) {
  if (config.algorithm != AlgorithmKind::Ssop) {
    if (!predictor.empty()) {
      throw ConfigError("only ssop takes a predictor");
    }
    return simulate(instance, config);
  }
  if (predictor.empty()) throw ConfigError("ssop requires a predictor");
  const PredictorSpec spec = PredictorSpec::parse(predictor, predictor_seed);
  auto cache = std::make_shared<RouteCache>(instance, config.solver);
  auto pred = make_predictor(spec, &instance, config, cache);
  return simulate(instance, config, pred.get(), cache);
}

LowerBoundReport lowerbound_py(int k, const AlgorithmConfig& config,
                               const std::string& predictor,
                               std::uint64_t predictor_seed) {
  std::optional<PredictorSpec> spec;
  if (!predictor.empty()) {
    spec = PredictorSpec::parse(predictor, predictor_seed);
  }
  return lowerbound_game(k, config, spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schedule-based online routing algorithms (OLTSP/OLDARP) under "
            "competitive analysis";

  py::register_exception<Error>(m, "OlsimError");

  py::class_<Point>(m, "Point")
      .def_static("line", &Point::line, py::arg("coordinate"))
      .def_static("plane", &Point::plane, py::arg("x"), py::arg("y"))
      .def_static("at_node", &Point::at_node, py::arg("index"))
      .def_readonly("x", &Point::x)
      .def_readonly("y", &Point::y)
      .def_readonly("node", &Point::node)
      .def_property_readonly(
          "kind", [](const Point& p) { return to_string(p.kind); })
      .def("__eq__", [](const Point& a, const Point& b) { return a == b; });

  py::class_<MetricSpace>(m, "MetricSpace")
      .def_static("line", &MetricSpace::line)
      .def_static("plane", &MetricSpace::plane)
      .def_static("explicit_matrix", &MetricSpace::explicit_matrix,
                  py::arg("matrix"), py::arg("origin_index") = 0)
      .def_property_readonly(
          "kind", [](const MetricSpace& s) { return to_string(s.kind()); })
      .def("origin", &MetricSpace::origin)
      .def("distance", &MetricSpace::distance, py::arg("p"), py::arg("q"));

  m.def("validate_metric", &validate_metric, py::arg("matrix"),
        py::arg("origin_index") = 0);
  m.def("load_matrix_csv", &load_matrix_csv, py::arg("path"),
        py::arg("origin_index") = 0);
  m.def("random_metric_space", &random_metric_space, py::arg("seed"),
        py::arg("nodes"));

  py::class_<Request>(m, "Request")
      .def(py::init([](int id, double t, const Point& pickup,
                       std::optional<Point> dropoff) {
             Request r;
             r.id = id;
             r.arrival_time = t;
             r.pickup = pickup;
             r.dropoff = dropoff;
             return r;
           }),
           py::arg("id"), py::arg("t"), py::arg("pickup"),
           py::arg("dropoff") = std::nullopt)
      .def_readonly("id", &Request::id)
      .def_readonly("arrival_time", &Request::arrival_time)
      .def_readonly("pickup", &Request::pickup)
      .def_readonly("dropoff", &Request::dropoff);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](const MetricSpace& space, std::vector<Request> requests,
                       const std::string& kind) {
             return Instance(space, std::move(requests),
                             problem_kind_from_string(kind));
           }),
           py::arg("space"), py::arg("requests"), py::arg("kind"))
      .def_property_readonly("space", &Instance::space)
      .def_property_readonly("requests", &Instance::requests)
      .def_property_readonly(
          "kind",
          [](const Instance& i) { return to_string(i.problem_kind()); })
      .def_property_readonly("n", &Instance::size)
      .def_property_readonly("last_arrival", &Instance::last_arrival)
      .def("to_json", &instance_to_json_text)
      .def("__eq__",
           [](const Instance& a, const Instance& b) { return a == b; })
      .def("__len__", &Instance::size);

  m.def(
      "generate_uniform",
      [](std::uint64_t seed, std::size_t n, const std::string& space,
         double horizon, const std::string& kind, std::size_t nodes) {
        return generate_uniform(seed, n, space_kind_from_string(space),
                                horizon, problem_kind_from_string(kind),
                                nodes);
      },
      py::arg("seed"), py::arg("n"), py::arg("space") = "line",
      py::arg("horizon") = 2.5, py::arg("kind") = "oltsp",
      py::arg("explicit_nodes") = 8);
  m.def("read_instance", &read_instance, py::arg("path"));
  m.def("write_instance", &write_instance, py::arg("instance"),
        py::arg("path"));
  m.def("instance_from_json", &instance_from_json_text, py::arg("text"));

  py::class_<ScheduleRoute>(m, "ScheduleRoute")
      .def_readonly("order", &ScheduleRoute::order)
      .def_readonly("length", &ScheduleRoute::length)
      .def_readonly("rho_guarantee", &ScheduleRoute::rho_guarantee)
      .def_property_readonly("solver", [](const ScheduleRoute& r) {
        return to_string(r.solver);
      });

  m.def(
      "route_length",
      [](const MetricSpace& space, const std::vector<Request>& requests,
         const std::vector<int>& order, const std::string& kind) {
        return route_length(space, requests, order,
                            problem_kind_from_string(kind));
      },
      py::arg("space"), py::arg("requests"), py::arg("order"),
      py::arg("kind"));
  m.def(
      "solve_exact",
      [](const MetricSpace& space, const std::vector<Request>& requests,
         const std::string& kind) {
        return solve_exact(space, requests, problem_kind_from_string(kind));
      },
      py::arg("space"), py::arg("requests"), py::arg("kind"));
  m.def("solve_christofides", &solve_christofides, py::arg("space"),
        py::arg("requests"));
  m.def(
      "solve_nearest_neighbor",
      [](const MetricSpace& space, const std::vector<Request>& requests,
         const std::string& kind) {
        return solve_nearest_neighbor(space, requests,
                                      problem_kind_from_string(kind));
      },
      py::arg("space"), py::arg("requests"), py::arg("kind"));

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("completion_time", &OptResult::completion_time)
      .def_readonly("order", &OptResult::order);

  m.def("opt_dp", &opt_dp, py::arg("instance"));
  m.def("opt_bruteforce", &opt_bruteforce, py::arg("instance"));
  m.def("replay_order", &replay_order, py::arg("instance"), py::arg("order"));

  py::class_<AlgorithmConfig>(m, "AlgorithmConfig")
      .def(py::init([](const std::string& algorithm, double theta,
                       double lambda, const std::string& solver) {
             AlgorithmConfig cfg;
             cfg.algorithm = algorithm_kind_from_string(algorithm);
             cfg.theta = theta;
             cfg.lambda = lambda;
             cfg.solver = solver_kind_from_string(solver);
             cfg.validate();
             return cfg;
           }),
           py::arg("algorithm"), py::arg("theta"), py::arg("lambda") = 1.0,
           py::arg("solver") = "exact")
      .def_readonly("theta", &AlgorithmConfig::theta)
      .def_readonly("lambda_", &AlgorithmConfig::lambda)
      .def_property_readonly(
          "algorithm",
          [](const AlgorithmConfig& c) { return to_string(c.algorithm); })
      .def_property_readonly("solver", [](const AlgorithmConfig& c) {
        return to_string(c.solver);
      });

  py::class_<ScheduleRecord>(m, "ScheduleRecord")
      .def_readonly("request_ids", &ScheduleRecord::request_ids)
      .def_readonly("schedule", &ScheduleRecord::schedule)
      .def_readonly("build_time", &ScheduleRecord::build_time)
      .def_readonly("ssop_start", &ScheduleRecord::ssop_start)
      .def_readonly("smartstart_ref_start",
                    &ScheduleRecord::smartstart_ref_start)
      .def_readonly("actual_start", &ScheduleRecord::actual_start)
      .def_readonly("finish", &ScheduleRecord::finish)
      .def_property_readonly("gadget", [](const ScheduleRecord& r) {
        return to_string(r.gadget);
      });

  py::class_<Trace>(m, "Trace")
      .def_readonly("schedules", &Trace::schedules)
      .def_readonly("completion_time", &Trace::completion_time)
      .def_readonly("eps_f", &Trace::eps_f)
      .def_readonly("last_arrival", &Trace::last_arrival)
      .def_readonly("server_working_at_tn", &Trace::server_working_at_tn)
      .def_property_readonly("decisions",
                             [](const Trace& t) {
                               std::vector<std::pair<int, std::string>> out;
                               for (const auto& d : t.predictions.decisions) {
                                 out.emplace_back(d.schedule_index,
                                                  to_string(d.gadget));
                               }
                               return out;
                             })
      .def("to_json", &trace_to_json_text);

  m.def("simulate", &simulate_py, py::arg("instance"), py::arg("config"),
        py::arg("predictor") = std::string(), py::arg("predictor_seed") = 0);

  py::class_<BoundSet>(m, "BoundSet")
      .def(py::init<double, double, double>(), py::arg("theta"),
           py::arg("rho"), py::arg("lambda_"))
      .def_readonly("A", &BoundSet::A)
      .def_readonly("B", &BoundSet::B)
      .def_readonly("C", &BoundSet::C)
      .def_readonly("lambda_A", &BoundSet::lambda_A)
      .def_readonly("B_lambda", &BoundSet::B_lambda)
      .def_readonly("C_lambda", &BoundSet::C_lambda)
      .def_readonly("A_over_lambda", &BoundSet::A_over_lambda)
      .def_readonly("B_inv_lambda", &BoundSet::B_inv_lambda)
      .def_readonly("C_inv_lambda", &BoundSet::C_inv_lambda);

  m.def("smartstart_bound", &smartstart_bound, py::arg("theta"),
        py::arg("rho"));
  m.def("smartstart_best_theta", &smartstart_best_theta, py::arg("rho"));
  m.def("ssop_bounds", &ssop_bounds, py::arg("theta"), py::arg("rho"),
        py::arg("lambda_"), py::arg("eps_f"), py::arg("opt"));

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("alg_cost", &RunReport::alg_cost)
      .def_readonly("opt_cost", &RunReport::opt_cost)
      .def_readonly("ratio", &RunReport::ratio)
      .def_readonly("eps_f", &RunReport::eps_f)
      .def_readonly("case_label", &RunReport::case_label)
      .def_readonly("certified_bound", &RunReport::certified_bound)
      .def_readonly("slack", &RunReport::slack)
      .def_readonly("violated", &RunReport::violated)
      .def_readonly("certifiable", &RunReport::certifiable);

  m.def("classify_and_certify", &classify_and_certify, py::arg("trace"),
        py::arg("opt"));
  m.def("certify_plain", &certify_plain, py::arg("trace"), py::arg("opt"));

  py::class_<LowerBoundReport>(m, "LowerBoundReport")
      .def_readonly("k", &LowerBoundReport::k)
      .def_readonly("epsilon", &LowerBoundReport::epsilon)
      .def_readonly("t1", &LowerBoundReport::t1)
      .def_readonly("triggered_case", &LowerBoundReport::triggered_case)
      .def_readonly("analyzed", &LowerBoundReport::analyzed)
      .def_readonly("alg_cost", &LowerBoundReport::alg_cost)
      .def_readonly("opt_cost", &LowerBoundReport::opt_cost)
      .def_readonly("ratio", &LowerBoundReport::ratio)
      .def_readonly("bound", &LowerBoundReport::bound)
      .def_readonly("pass_", &LowerBoundReport::pass);

  m.def("lowerbound_game", &lowerbound_py, py::arg("k"), py::arg("config"),
        py::arg("predictor") = std::string(), py::arg("predictor_seed") = 0);
}

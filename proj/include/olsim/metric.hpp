#ifndef OLSIM_METRIC_HPP
#define OLSIM_METRIC_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "olsim/error.hpp"

namespace olsim {

enum class SpaceKind { Line, Plane, Explicit };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

// A position in one of the three supported spaces. The variant must match
// the space the point is used with.
struct Point {
  SpaceKind kind = SpaceKind::Line;
  double x = 0.0;
  double y = 0.0;          // Plane only
  std::size_t node = 0;    // Explicit only

  static Point line(double coordinate) {
    Point p;
    p.kind = SpaceKind::Line;
    p.x = coordinate;
    return p;
  }
  static Point plane(double px, double py) {
    Point p;
    p.kind = SpaceKind::Plane;
    p.x = px;
    p.y = py;
    return p;
  }
  static Point at_node(std::size_t index) {
    Point p;
    p.kind = SpaceKind::Explicit;
    p.node = index;
    return p;
  }

  bool operator==(const Point& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case SpaceKind::Line: return x == o.x;
      case SpaceKind::Plane: return x == o.x && y == o.y;
      case SpaceKind::Explicit: return node == o.node;
    }
    return false;
  }
};

// Immutable metric space. Explicit spaces carry a validated symmetric
// distance matrix and a distinguished origin node; Line and Plane use the
// usual |.| and Euclidean metrics with origins 0 and (0,0).
class MetricSpace {
 public:
  static MetricSpace line();
  static MetricSpace plane();
  // Validates the matrix (square, zero diagonal, symmetric, nonnegative,
  // triangle inequality within 1e-9) and throws ValidationError naming the
  // first offending entry or triple.
  static MetricSpace explicit_matrix(std::vector<std::vector<double>> matrix,
                                     std::size_t origin_index = 0);

  SpaceKind kind() const { return kind_; }
  Point origin() const;
  double distance(const Point& p, const Point& q) const;

  // Explicit-space accessors.
  std::size_t size() const { return matrix_.size(); }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  std::size_t origin_index() const { return origin_index_; }

 private:
  MetricSpace() = default;
  SpaceKind kind_ = SpaceKind::Line;
  std::vector<std::vector<double>> matrix_;
  std::size_t origin_index_ = 0;
};

// Tolerance used when validating triangle inequalities of explicit
// matrices; float closures of graph metrics carry last-ulp noise.
inline constexpr double kTriangleTolerance = 1e-9;

// Wraps MetricSpace::explicit_matrix.
MetricSpace validate_metric(std::vector<std::vector<double>> matrix,
                            std::size_t origin_index = 0);

// Reads a square matrix from a plain-text CSV file (one row per line,
// comma-separated entries) and validates it.
MetricSpace load_matrix_csv(const std::string& path,
                            std::size_t origin_index = 0);

// Shortest-path closure of a random symmetric weighted graph; metric by
// construction. Used by generators and tests that need explicit spaces.
MetricSpace random_metric_space(std::uint64_t seed, std::size_t nodes);

}  // namespace olsim

#endif

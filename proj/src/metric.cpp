#include "olsim/metric.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "olsim/rng.hpp"

namespace olsim {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Line: return "line";
    case SpaceKind::Plane: return "plane";
    case SpaceKind::Explicit: return "explicit";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& name) {
  if (name == "line") return SpaceKind::Line;
  if (name == "plane") return SpaceKind::Plane;
  if (name == "explicit") return SpaceKind::Explicit;
  throw ValidationError("unknown space kind \"" + name + "\"");
}

MetricSpace MetricSpace::line() {
  MetricSpace s;
  s.kind_ = SpaceKind::Line;
  return s;
}

MetricSpace MetricSpace::plane() {
  MetricSpace s;
  s.kind_ = SpaceKind::Plane;
  return s;
}

MetricSpace MetricSpace::explicit_matrix(
    std::vector<std::vector<double>> matrix, std::size_t origin_index) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw ValidationError("matrix is not square: row " + std::to_string(i) +
                            " has " + std::to_string(matrix[i].size()) +
                            " entries, expected " + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 0.0) {
      throw ValidationError("nonzero diagonal at (" + std::to_string(i) + "," +
                            std::to_string(i) + ")");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!(matrix[i][j] >= 0.0) || !std::isfinite(matrix[i][j])) {
        throw ValidationError("negative or non-finite entry at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
      }
      if (matrix[i][j] != matrix[j][i]) {
        throw ValidationError("asymmetric entries at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + kTriangleTolerance) {
          throw ValidationError(
              "triangle inequality violated by triple (" + std::to_string(i) +
              "," + std::to_string(j) + "," + std::to_string(k) + "): d(" +
              std::to_string(i) + "," + std::to_string(k) + ") > d(" +
              std::to_string(i) + "," + std::to_string(j) + ") + d(" +
              std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
  if (n > 0 && origin_index >= n) {
    throw ValidationError("origin index " + std::to_string(origin_index) +
                          " out of range for " + std::to_string(n) +
                          " nodes");
  }
  MetricSpace s;
  s.kind_ = SpaceKind::Explicit;
  s.matrix_ = std::move(matrix);
  s.origin_index_ = origin_index;
  return s;
}

Point MetricSpace::origin() const {
  switch (kind_) {
    case SpaceKind::Line: return Point::line(0.0);
    case SpaceKind::Plane: return Point::plane(0.0, 0.0);
    case SpaceKind::Explicit: return Point::at_node(origin_index_);
  }
  return Point::line(0.0);
}

double MetricSpace::distance(const Point& p, const Point& q) const {
  if (p.kind != kind_ || q.kind != kind_) {
    throw MetricError("point/space variant mismatch: space is " +
                      to_string(kind_));
  }
  switch (kind_) {
    case SpaceKind::Line:
      return std::abs(p.x - q.x);
    case SpaceKind::Plane:
      return std::hypot(p.x - q.x, p.y - q.y);
    case SpaceKind::Explicit:
      if (p.node >= matrix_.size() || q.node >= matrix_.size()) {
        throw MetricError("node index out of range (matrix has " +
                          std::to_string(matrix_.size()) + " nodes)");
      }
      return matrix_[p.node][q.node];
  }
  return 0.0;
}

MetricSpace validate_metric(std::vector<std::vector<double>> matrix,
                            std::size_t origin_index) {
  return MetricSpace::explicit_matrix(std::move(matrix), origin_index);
}

MetricSpace load_matrix_csv(const std::string& path,
                            std::size_t origin_index) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ValidationError("non-numeric cell \"" + cell + "\" in " + path);
      }
    }
    rows.push_back(std::move(row));
  }
  return validate_metric(std::move(rows), origin_index);
}

MetricSpace random_metric_space(std::uint64_t seed, std::size_t nodes) {
  Rng rng(seed);
  std::vector<std::vector<double>> m(nodes, std::vector<double>(nodes, 0.0));
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = i + 1; j < nodes; ++j) {
      m[i][j] = m[j][i] = rng.uniform(0.1, 2.0);
    }
  }
  // Floyd-Warshall closure turns arbitrary symmetric weights into a metric.
  for (std::size_t k = 0; k < nodes; ++k) {
    for (std::size_t i = 0; i < nodes; ++i) {
      for (std::size_t j = 0; j < nodes; ++j) {
        const double via = m[i][k] + m[k][j];
        if (via < m[i][j]) m[i][j] = via;
      }
    }
  }
  return MetricSpace::explicit_matrix(std::move(m), 0);
}

}  // namespace olsim

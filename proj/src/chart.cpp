#include "conelift/chart.hpp"

#include <Eigen/Eigenvalues>
#include <limits>
#include <stdexcept>

namespace conelift {

const char* to_string(Target t) {
  switch (t) {
    case Target::sphere: return "sphere";
    case Target::cone: return "cone";
    case Target::plane: return "plane";
  }
  return "unknown";
}

int GridChart::expected_width() const {
  switch (target) {
    case Target::sphere: return n;
    case Target::cone: return k == 0 ? n + 1 : n + 2;
    case Target::plane: return n - 1;
  }
  return 0;
}

Index GridChart::flat_index(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != m)
    throw std::invalid_argument("flat_index: index arity does not match chart dimension");
  Index flat = 0;
  for (int axis = 0; axis < m; ++axis) {
    int i = idx[axis];
    const int len = shape[axis];
    if (periodic[axis]) {
      i %= len;
      if (i < 0) i += len;
    } else if (i < 0 || i >= len) {
      throw std::out_of_range("flat_index: index outside a non-periodic axis");
    }
    flat = flat * len + i;
  }
  return flat;
}

void GridChart::unflatten(Index flat, std::vector<int>& idx) const {
  idx.resize(m);
  for (int axis = m - 1; axis >= 0; --axis) {
    const int len = shape[axis];
    idx[axis] = static_cast<int>(flat % len);
    flat /= len;
  }
}

void GridChart::validate() const {
  if (m < 1) throw std::invalid_argument("chart: intrinsic dimension must be positive");
  if (n < 2) throw std::invalid_argument("chart: sphere dimension parameter must be at least 2");
  if (static_cast<int>(shape.size()) != m || static_cast<int>(spacing.size()) != m ||
      static_cast<int>(origin.size()) != m || static_cast<int>(periodic.size()) != m)
    throw std::invalid_argument("chart: per-axis arrays must all have length m");
  if (target == Target::cone && k != 0 && k != 1 && k != -1)
    throw std::invalid_argument("chart: cone tag must be 0, +1 or -1");
  Index nodes = 1;
  for (int axis = 0; axis < m; ++axis) {
    if (shape[axis] < 1) throw std::invalid_argument("chart: axis node count must be positive");
    if (!(spacing[axis] > 0.0)) throw std::invalid_argument("chart: spacing must be positive");
    nodes *= shape[axis];
  }
  if (values.rows() != nodes)
    throw std::invalid_argument("chart: values row count does not match the grid shape");
  if (width() != expected_width())
    throw std::invalid_argument("chart: values width does not match the target");
}

bool GridChart::same_grid(const GridChart& other) const {
  return m == other.m && shape == other.shape && spacing == other.spacing &&
         origin == other.origin && periodic == other.periodic;
}

Mat MetricField::node_metric(Index node) const {
  Mat g(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) g(r, c) = values(node, r * m + c);
  return g;
}

void MetricField::set_node_metric(Index node, const Mat& g) {
  if (g.rows() != m || g.cols() != m)
    throw std::invalid_argument("set_node_metric: block size mismatch");
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) values(node, r * m + c) = g(r, c);
}

double MetricField::min_eigenvalue() const {
  double worst = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < num_nodes(); ++i) {
    Eigen::SelfAdjointEigenSolver<Mat> es(node_metric(i));
    worst = std::min(worst, es.eigenvalues().minCoeff());
  }
  return worst;
}

}  // namespace conelift

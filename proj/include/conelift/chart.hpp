#pragma once

#include <cstdint>
#include <vector>

#include "conelift/common.hpp"
#include "conelift/lorentz.hpp"

namespace conelift {

enum class Target { sphere, cone, plane };

const char* to_string(Target t);

/// Regular tensor parameter grid carrying sampled map values: the
/// discrete stand-in for a chart of (M, g) and its immersions.
///
/// Nodes are stored row-major over the multi-index (last axis fastest);
/// values row i holds the ambient coordinates of node i. Periodic axes
/// wrap index arithmetic; the grid then covers one full period with
/// shape[axis] distinct nodes.
struct GridChart {
  int m = 0;  // intrinsic dimension
  int n = 0;  // sphere dimension parameter
  Target target = Target::sphere;
  int k = 0;  // cone tag, meaningful when target == cone
  std::vector<int> shape;
  std::vector<double> spacing;
  std::vector<double> origin;
  std::vector<std::uint8_t> periodic;
  Mat values;  // num_nodes x width

  Index num_nodes() const { return values.rows(); }
  int width() const { return static_cast<int>(values.cols()); }

  /// Width implied by target/k/n: sphere n, cone n+1 or n+2, plane n-1.
  int expected_width() const;

  Index flat_index(const std::vector<int>& idx) const;
  void unflatten(Index flat, std::vector<int>& idx) const;

  /// Parameter coordinate of a node along one axis.
  double axis_coord(int axis, int i) const { return origin[axis] + spacing[axis] * i; }

  /// Throws invalid_argument on inconsistent sizes.
  void validate() const;

  /// True when the grids can carry node-by-node correspondences.
  bool same_grid(const GridChart& other) const;
};

/// Per-node symmetric m x m bilinear form samples, stored row-major.
struct MetricField {
  int m = 0;
  Mat values;  // num_nodes x (m*m)

  MetricField() = default;
  MetricField(int m_, Index nodes) : m(m_), values(Mat::Zero(nodes, m_ * m_)) {}

  Index num_nodes() const { return values.rows(); }

  Mat node_metric(Index node) const;
  void set_node_metric(Index node, const Mat& g);

  /// Smallest eigenvalue over all nodes (positive-definiteness probe).
  double min_eigenvalue() const;
};

}  // namespace conelift

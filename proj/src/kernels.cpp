#include "conelift/kernels.hpp"

#include <stdexcept>

#include "conelift/cone.hpp"
#include "conelift/conformal.hpp"
#include "node_loop.hpp"

namespace conelift {

namespace {

void require_differentiable(const GridChart& chart) {
  for (int axis = 0; axis < chart.m; ++axis)
    if (chart.shape[axis] < 3)
      throw std::invalid_argument("finite differences need at least 3 nodes along every axis");
}

}  // namespace

Mat chart_jacobian(const GridChart& chart, Index node) {
  std::vector<int> idx;
  chart.unflatten(node, idx);
  std::vector<int> probe = idx;
  Mat J(chart.width(), chart.m);
  for (int axis = 0; axis < chart.m; ++axis) {
    const int len = chart.shape[axis];
    if (len < 3)
      throw std::invalid_argument(
          "chart_jacobian: finite differences need at least 3 nodes along every axis");
    const double h2 = 2.0 * chart.spacing[axis];
    const int i = idx[axis];
    if (chart.periodic[axis] || (i > 0 && i < len - 1)) {
      probe[axis] = i + 1;
      const Index fwd = chart.flat_index(probe);
      probe[axis] = i - 1;
      const Index bwd = chart.flat_index(probe);
      J.col(axis) = (chart.values.row(fwd) - chart.values.row(bwd)).transpose() / h2;
    } else if (i == 0) {
      probe[axis] = 1;
      const Index p1 = chart.flat_index(probe);
      probe[axis] = 2;
      const Index p2 = chart.flat_index(probe);
      J.col(axis) =
          (-3.0 * chart.values.row(node) + 4.0 * chart.values.row(p1) - chart.values.row(p2))
              .transpose() /
          h2;
    } else {
      probe[axis] = len - 2;
      const Index p1 = chart.flat_index(probe);
      probe[axis] = len - 3;
      const Index p2 = chart.flat_index(probe);
      J.col(axis) =
          (3.0 * chart.values.row(node) - 4.0 * chart.values.row(p1) + chart.values.row(p2))
              .transpose() /
          h2;
    }
    probe[axis] = i;
  }
  return J;
}

MetricField pullback_metric(const GridChart& chart, const MetricSignature& s, Exec exec) {
  chart.validate();
  require_differentiable(chart);
  if (s.dim() != chart.width())
    throw std::invalid_argument("pullback_metric: signature does not match the value width");
  MetricField out(chart.m, chart.num_nodes());
  const int m = chart.m;
  detail::run_nodes(chart.num_nodes(), exec, [&](Index node) {
    const Mat J = chart_jacobian(chart, node);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double val = J.col(i).tail(s.q).dot(J.col(j).tail(s.q));
        if (s.p > 0) val -= J.col(i).head(s.p).dot(J.col(j).head(s.p));
        out.values(node, i * m + j) = val;
        out.values(node, j * m + i) = val;
      }
  });
  return out;
}

MetricField pullback_metric(const GridChart& chart, Exec exec) {
  chart.validate();
  const MetricSignature s = chart.target == Target::cone
                                ? cone_ambient_signature(chart.k, chart.n)
                                : sig_euclidean(chart.width());
  return pullback_metric(chart, s, exec);
}

std::vector<double> metric_deviation(const MetricField& P, const MetricField& G, Exec exec) {
  if (P.m != G.m || P.num_nodes() != G.num_nodes())
    throw std::invalid_argument("metric_deviation: field shapes do not match");
  std::vector<double> out(static_cast<std::size_t>(P.num_nodes()));
  detail::run_nodes(P.num_nodes(), exec, [&](Index node) {
    const double diff = (P.values.row(node) - G.values.row(node)).norm();
    const double ref = G.values.row(node).norm();
    out[static_cast<std::size_t>(node)] = ref > 0.0 ? diff / ref : diff;
  });
  return out;
}

GridChart chart_apply(const Mat& M, const GridChart& chart, Exec exec) {
  chart.validate();
  if (M.rows() != M.cols() || M.cols() != chart.width())
    throw std::invalid_argument("chart_apply: matrix does not match the value width");
  GridChart out = chart;
  detail::run_nodes(chart.num_nodes(), exec, [&](Index node) {
    out.values.row(node) = (M * chart.values.row(node).transpose()).transpose();
  });
  return out;
}

Mat mobius_apply_batch(const LorentzMap& m, const Mat& points, Exec exec) {
  if (points.cols() != m.n())
    throw std::invalid_argument("mobius_apply_batch: point width does not match the map");
  Mat out(points.rows(), points.cols());
  detail::run_nodes(points.rows(), exec, [&](Index i) {
    out.row(i) = mobius_apply(m, points.row(i).transpose()).transpose();
  });
  return out;
}

}  // namespace conelift

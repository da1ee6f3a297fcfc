#include "conelift/analysis.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conelift/cone.hpp"
#include "node_loop.hpp"

namespace conelift {

namespace {

// Per-node slots are filled under run_nodes and reduced serially here,
// in index order, so reports are identical between execution policies.
double serial_max(const std::vector<double>& xs) {
  double acc = 0.0;
  for (double x : xs) acc = std::max(acc, x);
  return acc;
}

constexpr double kConeMembershipTol = 1e-8;  // on scale-normalized residuals

double normalized_cone_residual(const ConePoint& p) {
  const ConeCheck c = cone_contains(p, kConeMembershipTol);
  const double scale = std::max(1.0, p.coords.squaredNorm());
  return std::max(c.quadric_residual / scale, c.slice_residual);
}

}  // namespace

ConformalFactorResult extract_conformal_factor(const GridChart& psi, const MetricField& g,
                                               Exec exec) {
  psi.validate();
  if (psi.target != Target::sphere)
    throw std::invalid_argument("extract_conformal_factor: expects a sphere-valued chart");
  if (g.m != psi.m || g.num_nodes() != psi.num_nodes())
    throw std::invalid_argument("extract_conformal_factor: metric field shape mismatch");

  const MetricField P = pullback_metric(psi, sig_euclidean(psi.width()), exec);
  const Index nodes = psi.num_nodes();
  ConformalFactorResult res;
  res.lambda.resize(nodes);
  std::vector<double> residual(static_cast<std::size_t>(nodes), 0.0);

  // c minimizes |P - c g|_F per node (Frobenius projection).
  detail::run_nodes(nodes, exec, [&](Index node) {
    const auto pn = P.values.row(node);
    const auto gn = g.values.row(node);
    const double den = gn.dot(gn);
    if (!(den > 0.0)) throw std::domain_error("extract_conformal_factor: degenerate metric sample");
    const double c = pn.dot(gn) / den;
    if (!(c > 0.0))
      throw std::domain_error(
          "extract_conformal_factor: nonpositive conformal ratio (not an immersion?)");
    residual[static_cast<std::size_t>(node)] = (pn - c * gn).norm() / gn.norm();
    res.lambda[node] = 1.0 / std::sqrt(c);
  });

  res.max_residual = serial_max(residual);
  return res;
}

GridChart cone_lift(const GridChart& psi, const Vec& lambda, int k, Exec exec) {
  psi.validate();
  if (psi.target != Target::sphere)
    throw std::invalid_argument("cone_lift: expects a sphere-valued chart");
  if (k != 0 && k != 1 && k != -1)
    throw std::invalid_argument("cone_lift: target tag must be 0, +1 or -1");
  if (lambda.size() != psi.num_nodes())
    throw std::invalid_argument("cone_lift: scale field length does not match the grid");
  for (Index i = 0; i < lambda.size(); ++i)
    if (!(lambda[i] > 0.0))
      throw std::invalid_argument("cone_lift: scale field must be positive everywhere");

  GridChart out = psi;
  out.target = Target::cone;
  out.k = k;
  const int width = k == 0 ? psi.n + 1 : psi.n + 2;
  out.values.resize(psi.num_nodes(), width);

  const Index n = psi.n;
  detail::run_nodes(psi.num_nodes(), exec, [&](Index node) {
    const double t = lambda[node];
    Index base = 0;
    if (k == -1) {
      out.values(node, 0) = 1.0;
      base = 1;
    }
    out.values(node, base) = t;
    out.values.row(node).segment(base + 1, n) = t * psi.values.row(node);
    if (k == 1) out.values(node, width - 1) = 1.0;
  });
  return out;
}

ImmersionReport verify_isometric_immersion(const GridChart& chart, const MetricField& g,
                                           double tol, Exec exec) {
  chart.validate();
  if (chart.target != Target::cone)
    throw std::invalid_argument("verify_isometric_immersion: expects a cone-valued chart");
  if (g.m != chart.m || g.num_nodes() != chart.num_nodes())
    throw std::invalid_argument("verify_isometric_immersion: metric field shape mismatch");

  const MetricField P = pullback_metric(chart, exec);
  const std::vector<double> dev = metric_deviation(P, g, exec);

  const Index nodes = chart.num_nodes();
  std::vector<double> cone_res(static_cast<std::size_t>(nodes), 0.0);
  std::vector<double> min_sv(static_cast<std::size_t>(nodes), 0.0);
  std::vector<std::uint8_t> future(static_cast<std::size_t>(nodes), 0);

  detail::run_nodes(nodes, exec, [&](Index node) {
    ConePoint p;
    p.k = chart.k;
    p.coords = chart.values.row(node).transpose();
    const ConeCheck c = cone_contains(p, kConeMembershipTol);
    cone_res[static_cast<std::size_t>(node)] = normalized_cone_residual(p);
    future[static_cast<std::size_t>(node)] = c.future ? 1 : 0;
    Eigen::JacobiSVD<Mat> svd(chart_jacobian(chart, node));
    min_sv[static_cast<std::size_t>(node)] = svd.singularValues().minCoeff();
  });

  ImmersionReport rep;
  rep.max_metric_deviation = serial_max(dev);
  rep.max_cone_residual = serial_max(cone_res);
  bool all_future = true;
  for (auto f : future) all_future = all_future && f != 0;
  double smallest = std::numeric_limits<double>::infinity();
  for (double s : min_sv) smallest = std::min(smallest, s);
  rep.min_jacobian_sv = smallest;
  rep.full_rank = smallest > 1e-8;
  rep.pass = all_future && rep.max_metric_deviation <= tol &&
             rep.max_cone_residual <= kConeMembershipTol;
  return rep;
}

double verify_projected_metric(const GridChart& cone_chart, const MetricField& g, Exec exec) {
  cone_chart.validate();
  if (cone_chart.target != Target::cone)
    throw std::invalid_argument("verify_projected_metric: expects a cone-valued chart");
  if (g.m != cone_chart.m || g.num_nodes() != cone_chart.num_nodes())
    throw std::invalid_argument("verify_projected_metric: metric field shape mismatch");

  // Project every node to its null ray's sphere point, pull the round
  // metric back through the projected chart, compare with t^{-2} g.
  GridChart proj = cone_chart;
  proj.target = Target::sphere;
  proj.k = 0;
  proj.values.resize(cone_chart.num_nodes(), cone_chart.n);
  Vec heights(cone_chart.num_nodes());

  detail::run_nodes(cone_chart.num_nodes(), exec, [&](Index node) {
    ConePoint p;
    p.k = cone_chart.k;
    p.coords = cone_chart.values.row(node).transpose();
    const ConePoint q = cone_convert(p, 0);
    heights[node] = q.coords[0];
    proj.values.row(node) = cone_project(q).transpose();
  });

  const MetricField P = pullback_metric(proj, sig_euclidean(proj.width()), exec);
  const Index nodes = cone_chart.num_nodes();
  std::vector<double> deviation(static_cast<std::size_t>(nodes), 0.0);
  detail::run_nodes(nodes, exec, [&](Index node) {
    const double t = heights[node];
    const auto expected = g.values.row(node) / (t * t);
    const double ref = expected.norm();
    const double diff = (P.values.row(node) - expected).norm();
    deviation[static_cast<std::size_t>(node)] = ref > 0.0 ? diff / ref : diff;
  });
  return serial_max(deviation);
}

}  // namespace conelift

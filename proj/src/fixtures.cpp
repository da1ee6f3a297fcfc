#include "conelift/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conelift/analysis.hpp"
#include "conelift/kernels.hpp"
#include "conelift/rng.hpp"

namespace conelift {
namespace fixtures {

namespace {

constexpr double kPi = std::numbers::pi;
// Polar angles stay inside [kPolarMargin, pi - kPolarMargin] so the
// box parametrization never touches the coordinate degeneracies.
constexpr double kPolarMargin = 0.3;

}  // namespace

CircleFixture make_circle(int nodes) {
  if (nodes < 3) throw std::invalid_argument("make_circle: need at least 3 nodes");
  CircleFixture fx;
  GridChart base;
  base.m = 1;
  base.n = 2;
  base.target = Target::cone;
  base.k = 0;
  base.shape = {nodes};
  base.spacing = {2.0 * kPi / nodes};
  base.origin = {0.0};
  base.periodic = {1};
  base.values.resize(nodes, 3);

  fx.phi1 = base;
  fx.phi2 = base;
  for (int i = 0; i < nodes; ++i) {
    const double theta = base.axis_coord(0, i);
    fx.phi1.values(i, 0) = 2.0;
    fx.phi1.values(i, 1) = 2.0 * std::cos(theta);
    fx.phi1.values(i, 2) = 2.0 * std::sin(theta);
    fx.phi2.values(i, 0) = 1.0;
    fx.phi2.values(i, 1) = std::cos(2.0 * theta);
    fx.phi2.values(i, 2) = std::sin(2.0 * theta);
  }

  fx.g = MetricField(1, nodes);
  fx.g.values.setConstant(4.0);

  fx.pairs.k = 0;
  fx.pairs.n = 2;
  fx.pairs.pairs.reserve(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i)
    fx.pairs.pairs.emplace_back(fx.phi1.values.row(i).transpose(),
                                fx.phi2.values.row(i).transpose());
  return fx;
}

GridChart make_sphere_box_chart(int n, const std::vector<int>& shape, bool full_azimuth) {
  if (n < 2) throw std::invalid_argument("make_sphere_box_chart: need n >= 2");
  const int m = n - 1;
  if (static_cast<int>(shape.size()) != m)
    throw std::invalid_argument("make_sphere_box_chart: shape arity must be n-1");

  GridChart chart;
  chart.m = m;
  chart.n = n;
  chart.target = Target::sphere;
  chart.k = 0;
  chart.shape = shape;
  chart.spacing.resize(m);
  chart.origin.resize(m);
  chart.periodic.assign(static_cast<std::size_t>(m), 0);

  for (int axis = 0; axis < m; ++axis) {
    const int len = shape[axis];
    if (len < 2) throw std::invalid_argument("make_sphere_box_chart: axes need at least 2 nodes");
    const bool azimuth = axis == m - 1;
    if (azimuth && full_azimuth) {
      chart.origin[axis] = 0.0;
      chart.spacing[axis] = 2.0 * kPi / len;
      chart.periodic[axis] = 1;
    } else if (azimuth) {
      chart.origin[axis] = kPolarMargin;
      chart.spacing[axis] = (2.0 * kPi - 2.0 * kPolarMargin) / (len - 1);
    } else {
      chart.origin[axis] = kPolarMargin;
      chart.spacing[axis] = (kPi - 2.0 * kPolarMargin) / (len - 1);
    }
  }

  Index nodes = 1;
  for (int len : shape) nodes *= len;
  chart.values.resize(nodes, n);
  std::vector<int> idx;
  for (Index node = 0; node < nodes; ++node) {
    chart.unflatten(node, idx);
    double prod = 1.0;
    for (int axis = 0; axis < m; ++axis) {
      const double t = chart.axis_coord(axis, idx[axis]);
      chart.values(node, axis) = prod * std::cos(t);
      prod *= std::sin(t);
    }
    chart.values(node, m) = prod;
  }
  return chart;
}

MetricField round_sphere_metric(const GridChart& sphere_chart) {
  sphere_chart.validate();
  if (sphere_chart.target != Target::sphere || sphere_chart.m != sphere_chart.n - 1)
    throw std::invalid_argument(
        "round_sphere_metric: expects an angle box chart with m = n-1 axes");
  const int m = sphere_chart.m;
  MetricField g(m, sphere_chart.num_nodes());
  std::vector<int> idx;
  for (Index node = 0; node < sphere_chart.num_nodes(); ++node) {
    sphere_chart.unflatten(node, idx);
    double prod = 1.0;
    for (int axis = 0; axis < m; ++axis) {
      g.values(node, axis * m + axis) = prod;
      const double s = std::sin(sphere_chart.axis_coord(axis, idx[axis]));
      prod *= s * s;
    }
  }
  return g;
}

SphereIdentityFixture make_sphere_identity(int n, const std::vector<int>& shape) {
  const GridChart psi = make_sphere_box_chart(n, shape, /*full_azimuth=*/true);
  SphereIdentityFixture fx;
  fx.chart = cone_lift(psi, Vec::Ones(psi.num_nodes()), 0);
  fx.g = round_sphere_metric(psi);
  return fx;
}

TauPairFixture make_tau_pair(int n, std::uint64_t seed, const std::vector<int>& shape,
                             int steps, double param_bound) {
  TauPairFixture fx;
  fx.tau = random_conformal(n, seed, steps, param_bound);

  const GridChart psi = make_sphere_box_chart(n, shape, /*full_azimuth=*/false);
  Vec lambda(psi.num_nodes());
  std::vector<int> idx;
  for (Index node = 0; node < psi.num_nodes(); ++node) {
    psi.unflatten(node, idx);
    double s = 0.0;
    for (int axis = 0; axis < psi.m; ++axis) s += psi.axis_coord(axis, idx[axis]);
    lambda[node] = 1.5 + 0.5 * std::sin(s + 0.3);  // smooth, in [1, 2]
  }

  fx.chart1 = cone_lift(psi, lambda, 0);
  fx.chart2 = chart_apply(fx.tau.entries, fx.chart1);

  const MetricField ground = round_sphere_metric(psi);
  fx.g = MetricField(psi.m, psi.num_nodes());
  for (Index node = 0; node < psi.num_nodes(); ++node)
    fx.g.values.row(node) = lambda[node] * lambda[node] * ground.values.row(node);

  fx.pairs.k = 0;
  fx.pairs.n = n;
  fx.pairs.pairs.reserve(static_cast<std::size_t>(psi.num_nodes()));
  for (Index node = 0; node < psi.num_nodes(); ++node)
    fx.pairs.pairs.emplace_back(fx.chart1.values.row(node).transpose(),
                                fx.chart2.values.row(node).transpose());
  return fx;
}

CorrespondenceSet make_random_cone_pairs(const LorentzMap& tau, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("make_random_cone_pairs: count must be positive");
  const int n = tau.n();
  Rng rng(seed);
  CorrespondenceSet c;
  c.k = 0;
  c.n = n;
  c.pairs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Vec z = rng.unit_vector(n);
    const double t = rng.uniform(0.5, 2.5);
    Vec x(n + 1);
    x[0] = t;
    x.tail(n) = t * z;
    c.pairs.emplace_back(x, tau.entries * x);
  }
  return c;
}

SelfMapSamples make_selfmap(const LorentzMap& tau, const std::vector<double>& t_levels,
                            const std::vector<int>& shape) {
  SelfMapSamples s;
  s.n = tau.n();
  s.t_levels = t_levels;
  s.sphere = make_sphere_box_chart(s.n, shape, /*full_azimuth=*/false);
  const Index nodes = s.sphere.num_nodes();
  const Index levels = static_cast<Index>(t_levels.size());

  const Mat rays = mobius_apply_batch(tau, s.sphere.values);
  const double a0 = tau.a();
  const Vec u = tau.u();

  s.f.resize(levels, nodes);
  s.image.assign(static_cast<std::size_t>(levels), rays);
  for (Index a = 0; a < levels; ++a) {
    const double t = t_levels[static_cast<std::size_t>(a)];
    for (Index b = 0; b < nodes; ++b)
      s.f(a, b) = t * (a0 + u.dot(s.sphere.values.row(b).transpose()));
  }
  return s;
}

SelfMapSamples make_corrupted_selfmap(int n, const std::vector<double>& t_levels,
                                      const std::vector<int>& shape, double twist) {
  if (n < 2) throw std::invalid_argument("make_corrupted_selfmap: need n >= 2");
  SelfMapSamples s;
  s.n = n;
  s.t_levels = t_levels;
  s.sphere = make_sphere_box_chart(n, shape, /*full_azimuth=*/false);
  const Index nodes = s.sphere.num_nodes();
  const Index levels = static_cast<Index>(t_levels.size());

  s.f.resize(levels, nodes);
  s.image.assign(static_cast<std::size_t>(levels), Mat(nodes, n));
  for (Index a = 0; a < levels; ++a) {
    const double t = t_levels[static_cast<std::size_t>(a)];
    // Rotate the first two sphere coordinates by an angle that grows
    // with the level: the rays then depend on t, which no restriction
    // of an ambient transformation can do.
    const double angle = twist * t;
    const double c = std::cos(angle), sn = std::sin(angle);
    Mat& img = s.image[static_cast<std::size_t>(a)];
    for (Index b = 0; b < nodes; ++b) {
      Vec z = s.sphere.values.row(b).transpose();
      const double z0 = z[0], z1 = z[1];
      z[0] = c * z0 - sn * z1;
      z[1] = sn * z0 + c * z1;
      img.row(b) = z.transpose();
      s.f(a, b) = t;
    }
  }
  return s;
}

std::vector<std::pair<Vec, Vec>> make_nonconformal_pairs(int n, int count, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_nonconformal_pairs: need n >= 2");
  if (count < 1) throw std::invalid_argument("make_nonconformal_pairs: count must be positive");
  Rng rng(seed);
  std::vector<std::pair<Vec, Vec>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Vec z = rng.unit_vector(n);
    Vec y = z.array().cube();
    y /= y.norm();  // smooth sphere map, but not a sphere action of the group
    pairs.emplace_back(z, y);
  }
  return pairs;
}

}  // namespace fixtures
}  // namespace conelift

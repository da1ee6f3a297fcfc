#include <cmath>
#include <numbers>

#include "conelift/analysis.hpp"
#include "conelift/fixtures.hpp"
#include "doctest.h"

using namespace conelift;

namespace {

GridChart circle_sphere_chart(int nodes, double winding) {
  GridChart c;
  c.m = 1;
  c.n = 2;
  c.target = Target::sphere;
  c.k = 0;
  c.shape = {nodes};
  c.spacing = {2.0 * std::numbers::pi / nodes};
  c.origin = {0.0};
  c.periodic = {1};
  c.values.resize(nodes, 2);
  for (int i = 0; i < nodes; ++i) {
    const double theta = winding * c.axis_coord(0, i);
    c.values.row(i) << std::cos(theta), std::sin(theta);
  }
  return c;
}

MetricField constant_metric(Index nodes, double value) {
  MetricField g(1, nodes);
  g.values.setConstant(value);
  return g;
}

}  // namespace

TEST_CASE("conformal factor of the identity sphere chart is one") {
  const GridChart psi = fixtures::make_sphere_box_chart(3, {65, 160}, true);
  const MetricField g = fixtures::round_sphere_metric(psi);
  const ConformalFactorResult r = extract_conformal_factor(psi, g);
  CHECK(r.max_residual <= 1e-3);
  for (Index i = 0; i < r.lambda.size(); i += 97)
    CHECK(r.lambda[i] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("conformal factor separates the two circle parametrizations") {
  const int nodes = 256;
  const MetricField g4 = constant_metric(nodes, 4.0);

  const ConformalFactorResult once = extract_conformal_factor(circle_sphere_chart(nodes, 1.0), g4);
  CHECK(once.max_residual <= 1e-6);  // one-dimensional: conformal by construction
  for (Index i = 0; i < nodes; i += 31)
    CHECK(once.lambda[i] == doctest::Approx(2.0).epsilon(1e-3));

  const ConformalFactorResult twice =
      extract_conformal_factor(circle_sphere_chart(nodes, 2.0), g4);
  for (Index i = 0; i < nodes; i += 31)
    CHECK(twice.lambda[i] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("degenerate data is rejected instead of yielding a factor") {
  GridChart flat = circle_sphere_chart(16, 1.0);
  flat.values.rowwise() = flat.values.row(0);  // constant map, zero pullback
  const MetricField g = constant_metric(16, 4.0);
  CHECK_THROWS_AS(extract_conformal_factor(flat, g), std::domain_error);
}

TEST_CASE("cone_lift reproduces the pinned circle immersions") {
  const fixtures::CircleFixture fx = fixtures::make_circle(64);

  const GridChart lift1 =
      cone_lift(circle_sphere_chart(64, 1.0), Vec::Constant(64, 2.0), 0);
  CHECK(lift1.values == fx.phi1.values);

  const GridChart lift2 =
      cone_lift(circle_sphere_chart(64, 2.0), Vec::Constant(64, 1.0), 0);
  CHECK((lift2.values - fx.phi2.values).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("cone_lift with unit factor is the unit slice at every tag") {
  const GridChart psi = fixtures::make_sphere_box_chart(3, {7, 9}, false);
  for (int k : {0, 1, -1}) {
    const GridChart lift = cone_lift(psi, Vec::Ones(psi.num_nodes()), k);
    CHECK(lift.target == Target::cone);
    CHECK(lift.k == k);
    CHECK(lift.width() == lift.expected_width());
    for (Index i = 0; i < lift.num_nodes(); ++i) {
      const ConeCheck c = cone_contains(ConePoint{k, lift.values.row(i).transpose()});
      CHECK(c.pass);
    }
  }
  CHECK_THROWS_AS(cone_lift(psi, Vec::Zero(psi.num_nodes()), 0), std::invalid_argument);
  CHECK_THROWS_AS(cone_lift(psi, Vec::Ones(3), 0), std::invalid_argument);
}

TEST_CASE("projecting a lift returns the sphere chart nodewise") {
  const fixtures::TauPairFixture fx = fixtures::make_tau_pair(3, 5, {7, 9});
  for (Index i = 0; i < fx.chart1.num_nodes(); ++i) {
    const Vec row = fx.chart1.values.row(i).transpose();
    const Vec z = cone_project(ConePoint{0, row});
    const double lambda = row[0];
    CHECK((lambda * z - row.tail(3)).cwiseAbs().maxCoeff() <= 1e-14 * lambda);
    CHECK(std::abs(z.norm() - 1.0) <= 1e-13);
  }
}

TEST_CASE("verify_isometric_immersion certifies the circle immersions") {
  const fixtures::CircleFixture fx = fixtures::make_circle(512);

  const ImmersionReport r1 = verify_isometric_immersion(fx.phi1, fx.g, 1e-3);
  CHECK(r1.pass);
  CHECK(r1.max_metric_deviation <= 1e-3);
  CHECK(r1.full_rank);

  const ImmersionReport r2 = verify_isometric_immersion(fx.phi2, fx.g, 1e-3);
  CHECK(r2.pass);

  MetricField wrong(1, fx.phi1.num_nodes());
  wrong.values.setConstant(1.0);
  const ImmersionReport bad = verify_isometric_immersion(fx.phi1, wrong, 1e-3);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_metric_deviation == doctest::Approx(3.0).epsilon(1e-2));
}

TEST_CASE("verify_isometric_immersion rejects off-cone values") {
  fixtures::CircleFixture fx = fixtures::make_circle(64);
  fx.phi1.values(10, 0) += 0.05;
  const ImmersionReport r = verify_isometric_immersion(fx.phi1, fx.g, 1.0);
  CHECK_FALSE(r.pass);
  CHECK(r.max_cone_residual > 1e-8);
}

TEST_CASE("projected metric matches t^{-2} g on the pinned fixtures") {
  const fixtures::CircleFixture fx = fixtures::make_circle(512);
  CHECK(verify_projected_metric(fx.phi1, fx.g) <= 1e-3);
  CHECK(verify_projected_metric(fx.phi2, fx.g) <= 1e-3);

  const fixtures::SphereIdentityFixture unit = fixtures::make_sphere_identity(3, {81, 200});
  CHECK(verify_projected_metric(unit.chart, unit.g) <= 1e-3);
}

TEST_CASE("projected metric residual converges at second order") {
  const fixtures::CircleFixture coarse = fixtures::make_circle(256);
  const fixtures::CircleFixture fine = fixtures::make_circle(512);
  const double r_coarse = verify_projected_metric(coarse.phi1, coarse.g);
  const double r_fine = verify_projected_metric(fine.phi1, fine.g);
  const double ratio = r_fine / r_coarse;
  CHECK(ratio >= 0.2);
  CHECK(ratio <= 0.3);
}

TEST_CASE("lift of an extracted factor reproduces an isometric chart") {
  // Heights recovered through the factor match the fixture's first
  // coordinate, so two isometric charts with equal projections agree.
  const fixtures::TauPairFixture fx = fixtures::make_tau_pair(3, 19, {81, 161});

  GridChart psi = fx.chart1;
  psi.target = Target::sphere;
  psi.k = 0;
  psi.values = Mat(fx.chart1.num_nodes(), 3);
  for (Index i = 0; i < fx.chart1.num_nodes(); ++i)
    psi.values.row(i) =
        cone_project(ConePoint{0, fx.chart1.values.row(i).transpose()}).transpose();

  const ConformalFactorResult r = extract_conformal_factor(psi, fx.g);
  CHECK(r.max_residual <= 2e-3);
  for (Index i = 0; i < psi.num_nodes(); i += 503)
    CHECK(r.lambda[i] == doctest::Approx(fx.chart1.values(i, 0)).epsilon(2e-3));

  const GridChart relift = cone_lift(psi, r.lambda, 0);
  double worst = 0.0;
  for (Index i = 0; i < psi.num_nodes(); ++i)
    worst = std::max(
        worst, (relift.values.row(i) - fx.chart1.values.row(i)).cwiseAbs().maxCoeff());
  CHECK(worst <= 5e-3);
}

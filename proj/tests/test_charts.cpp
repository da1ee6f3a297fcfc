#include <cmath>

#include "conelift/chart.hpp"
#include "conelift/fixtures.hpp"
#include "doctest.h"

using namespace conelift;

namespace {

GridChart small_chart() {
  GridChart c;
  c.m = 2;
  c.n = 2;
  c.target = Target::cone;
  c.k = 0;
  c.shape = {3, 4};
  c.spacing = {0.5, 0.25};
  c.origin = {1.0, -1.0};
  c.periodic = {0, 1};
  c.values = Mat::Zero(12, 3);
  c.values.col(0).setOnes();
  c.values.col(1).setOnes();
  return c;
}

}  // namespace

TEST_CASE("flat_index and unflatten agree, last axis fastest") {
  const GridChart c = small_chart();
  CHECK(c.flat_index({0, 0}) == 0);
  CHECK(c.flat_index({0, 1}) == 1);
  CHECK(c.flat_index({1, 0}) == 4);
  CHECK(c.flat_index({2, 3}) == 11);

  std::vector<int> idx;
  for (Index flat = 0; flat < c.num_nodes(); ++flat) {
    c.unflatten(flat, idx);
    CHECK(c.flat_index(idx) == flat);
  }
}

TEST_CASE("periodic axes wrap and non-periodic axes bound-check") {
  const GridChart c = small_chart();
  CHECK(c.flat_index({0, 4}) == c.flat_index({0, 0}));
  CHECK(c.flat_index({0, -1}) == c.flat_index({0, 3}));
  CHECK(c.flat_index({1, -5}) == c.flat_index({1, 3}));
  CHECK_THROWS_AS(c.flat_index({3, 0}), std::out_of_range);
  CHECK_THROWS_AS(c.flat_index({-1, 0}), std::out_of_range);
  CHECK_THROWS_AS(c.flat_index({0}), std::invalid_argument);
}

TEST_CASE("axis coordinates are affine in the index") {
  const GridChart c = small_chart();
  CHECK(c.axis_coord(0, 0) == 1.0);
  CHECK(c.axis_coord(0, 2) == 2.0);
  CHECK(c.axis_coord(1, 3) == -0.25);
}

TEST_CASE("expected_width tracks the target") {
  GridChart c = small_chart();
  CHECK(c.expected_width() == 3);  // flat cone: n + 1
  c.k = 1;
  CHECK(c.expected_width() == 4);
  c.k = -1;
  CHECK(c.expected_width() == 4);
  c.target = Target::sphere;
  CHECK(c.expected_width() == 2);
  c.target = Target::plane;
  CHECK(c.expected_width() == 1);
}

TEST_CASE("validate rejects inconsistent charts") {
  GridChart ok = small_chart();
  CHECK_NOTHROW(ok.validate());

  GridChart bad = ok;
  bad.shape = {3};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = ok;
  bad.spacing[1] = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = ok;
  bad.values = Mat::Zero(11, 3);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = ok;
  bad.values = Mat::Zero(12, 4);  // width, not the k = 0 cone's n + 1
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = ok;
  bad.k = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = ok;
  bad.n = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("same_grid compares structure, not values") {
  const GridChart a = small_chart();
  GridChart b = a;
  b.values.setConstant(9.0);
  CHECK(a.same_grid(b));
  b.spacing[0] = 0.75;
  CHECK_FALSE(a.same_grid(b));
}

TEST_CASE("MetricField stores symmetric blocks row-major") {
  MetricField g(2, 3);
  Mat block(2, 2);
  block << 4, 1, 1, 2;
  g.set_node_metric(1, block);
  CHECK(g.node_metric(1) == block);
  CHECK(g.node_metric(0) == Mat::Zero(2, 2));
  CHECK(g.values(1, 0) == 4.0);
  CHECK(g.values(1, 1) == 1.0);
  CHECK(g.values(1, 3) == 2.0);
  CHECK_THROWS_AS(g.set_node_metric(0, Mat::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("min_eigenvalue is a positive-definiteness probe") {
  MetricField g(2, 2);
  Mat pd(2, 2), indef(2, 2);
  pd << 2, 0, 0, 3;
  indef << 1, 2, 2, 1;  // eigenvalues 3 and -1
  g.set_node_metric(0, pd);
  g.set_node_metric(1, pd);
  CHECK(g.min_eigenvalue() == doctest::Approx(2.0).epsilon(1e-12));
  g.set_node_metric(1, indef);
  CHECK(g.min_eigenvalue() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("target names serialize stably") {
  CHECK(std::string(to_string(Target::sphere)) == "sphere");
  CHECK(std::string(to_string(Target::cone)) == "cone");
  CHECK(std::string(to_string(Target::plane)) == "plane");
}

TEST_CASE("sphere box chart nodes are unit and the analytic metric is diagonal") {
  const GridChart c = fixtures::make_sphere_box_chart(4, {5, 5, 8}, true);
  c.validate();
  for (Index i = 0; i < c.num_nodes(); ++i)
    CHECK(std::abs(c.values.row(i).norm() - 1.0) <= 1e-14);

  const MetricField g = fixtures::round_sphere_metric(c);
  CHECK(g.min_eigenvalue() > 0.0);
  std::vector<int> idx;
  for (Index node = 0; node < c.num_nodes(); node += 7) {
    c.unflatten(node, idx);
    const Mat block = g.node_metric(node);
    CHECK(block(0, 0) == 1.0);
    const double s0 = std::sin(c.axis_coord(0, idx[0]));
    CHECK(block(1, 1) == doctest::Approx(s0 * s0).epsilon(1e-14));
    CHECK(std::abs(block(0, 1)) == 0.0);
  }
}

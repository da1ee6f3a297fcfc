#include <cmath>

#include "conelift/cone.hpp"
#include "conelift/conformal.hpp"
#include "conelift/rng.hpp"
#include "doctest.h"

using namespace conelift;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ConePoint random_k0_point(Rng& rng, int n) {
  Vec x(n + 1);
  const double t = rng.uniform(0.5, 3.0);
  x[0] = t;
  x.tail(n) = t * rng.unit_vector(n);
  return ConePoint{0, x};
}

}  // namespace

TEST_CASE("cone_contains evaluates the pinned memberships") {
  SUBCASE("flat cone point passes") {
    const ConeCheck c = cone_contains(ConePoint{0, vec({2, 2, 0, 0})});
    CHECK(c.pass);
    CHECK(c.future);
    CHECK(c.quadric_residual == 0.0);
    CHECK(c.slice_residual == 0.0);
  }
  SUBCASE("unit-slice point on the positive-curvature cone passes") {
    const ConeCheck c = cone_contains(ConePoint{1, vec({1, 1, 0, 1})});
    CHECK(c.pass);
    CHECK(c.slice_residual == 0.0);
  }
  SUBCASE("off-cone point reports the quadric residual") {
    const ConeCheck c = cone_contains(ConePoint{0, vec({1, 2, 0, 0})});
    CHECK_FALSE(c.pass);
    CHECK(c.quadric_residual == 3.0);
  }
  SUBCASE("past-directed point is rejected") {
    const ConeCheck c = cone_contains(ConePoint{0, vec({-2, 2, 0, 0})});
    CHECK_FALSE(c.pass);
    CHECK_FALSE(c.future);
  }
  SUBCASE("negative-curvature slice and future flags") {
    // Coordinates (t1, t2, x): slice t1 = 1, future means t2 > 0.
    CHECK(cone_contains(ConePoint{-1, vec({1, 2, 2, 0})}).pass);
    CHECK_FALSE(cone_contains(ConePoint{-1, vec({1, -2, 2, 0})}).future);
    CHECK(cone_contains(ConePoint{-1, vec({2, 2, 2, 0})}).slice_residual == 1.0);
  }
  SUBCASE("wrong coordinate length throws") {
    CHECK_THROWS_AS(cone_contains(ConePoint{0, vec({1})}), std::invalid_argument);
    CHECK_THROWS_AS(cone_contains(ConePoint{2, vec({1, 1, 0})}), std::invalid_argument);
  }
}

TEST_CASE("cone_convert matches the pinned slices and round-trips bit-exactly") {
  const ConePoint p0{0, vec({2, 2, 0, 0})};

  const ConePoint plus = cone_convert(p0, 1);
  CHECK(plus.k == 1);
  CHECK(plus.coords.size() == 5);
  CHECK(plus.coords == vec({2, 2, 0, 0, 1}));

  const ConePoint minus = cone_convert(p0, -1);
  CHECK(minus.k == -1);
  CHECK(minus.coords == vec({1, 2, 2, 0, 0}));

  CHECK(cone_convert(plus, 0).coords == p0.coords);
  CHECK(cone_convert(minus, 0).coords == p0.coords);
  CHECK(cone_convert(cone_convert(plus, -1), 1).coords == plus.coords);
  CHECK(cone_convert(p0, 0).coords == p0.coords);

  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const ConePoint p = random_k0_point(rng, 3);
    for (int k : {1, -1}) {
      const ConePoint q = cone_convert(p, k);
      const ConeCheck c = cone_contains(q);
      CHECK(c.quadric_residual <= 1e-12 * std::max(1.0, q.coords.squaredNorm()));
      CHECK(c.slice_residual == 0.0);
      CHECK(cone_convert(q, 0).coords == p.coords);  // bit-exact strip
    }
  }
}

TEST_CASE("cone_convert refuses points off the source slice") {
  CHECK_THROWS_AS(cone_convert(ConePoint{1, vec({2, 2, 0, 0, 1.5})}, 0), std::invalid_argument);
  CHECK_THROWS_AS(cone_convert(ConePoint{-1, vec({0.5, 2, 2, 0, 0})}, 0), std::invalid_argument);
}

TEST_CASE("cone_project matches the pinned rays") {
  CHECK(cone_project(ConePoint{0, vec({2, 2, 0, 0})}) == vec({1, 0, 0}));
  CHECK((cone_project(ConePoint{0, vec({5, 3, 4, 0})}) - vec({0.6, 0.8, 0})).cwiseAbs().maxCoeff()
        <= 1e-16);
  CHECK(cone_project(ConePoint{1, vec({2, 2, 0, 0, 1})}) == vec({1, 0, 0}));
  CHECK_THROWS_AS(cone_project(ConePoint{0, vec({0, 0, 0, 0})}), std::invalid_argument);
}

TEST_CASE("cone_from_sphere inverts cone_project at every tag") {
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const Vec z = rng.unit_vector(4);
    const double t = rng.uniform(0.5, 3.0);
    for (int k : {0, 1, -1}) {
      const ConePoint p = cone_from_sphere(t, z, k);
      CHECK(cone_contains(p).pass);
      CHECK((cone_project(p) - z).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }
}

TEST_CASE("projection intertwines the ambient action with the sphere action") {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 3;
    const LorentzMap tau = random_conformal(n, 4000 + trial, 6, 2.0);
    const ConePoint p = random_k0_point(rng, n);
    const Vec lhs = cone_project(ConePoint{0, tau.entries * p.coords});
    const Vec rhs = mobius_apply(tau, cone_project(p));
    CHECK((lhs - rhs).norm() <= 1e-10);
  }
}

TEST_CASE("sphere dimension parameter n is tag-aware") {
  CHECK(ConePoint{0, vec({2, 2, 0, 0})}.n() == 3);
  CHECK(ConePoint{1, vec({2, 2, 0, 0, 1})}.n() == 3);
  CHECK(ConePoint{-1, vec({1, 2, 2, 0, 0})}.n() == 3);
}

#pragma once

#include <cstdint>
#include <vector>

#include "conelift/chart.hpp"
#include "conelift/conformal.hpp"
#include "conelift/rigidity.hpp"

namespace conelift {
namespace fixtures {

/// The two isometric circle immersions that no ambient transformation
/// relates: phi1(theta) = (2, 2cos, 2sin), phi2(theta) = (1, cos 2t,
/// sin 2t), both isometric for g = 4 dtheta^2 on a periodic N-node grid.
struct CircleFixture {
  GridChart phi1;
  GridChart phi2;
  MetricField g;
  CorrespondenceSet pairs;
};

CircleFixture make_circle(int nodes);

/// Sphere-valued box chart in hyperspherical angles: polar angles kept
/// away from the coordinate degeneracies, azimuth spanning [0, 2pi)
/// periodically when full == true. m = n-1 axes.
GridChart make_sphere_box_chart(int n, const std::vector<int>& shape, bool full_azimuth = false);

/// Analytic round-sphere metric samples for a chart built by
/// make_sphere_box_chart (diagonal, entries prod_{i<j} sin^2 theta_i).
MetricField round_sphere_metric(const GridChart& sphere_chart);

/// Unit-slice cone chart (1, z) over a sphere box grid, with its
/// analytic metric.
struct SphereIdentityFixture {
  GridChart chart;
  MetricField g;
};

SphereIdentityFixture make_sphere_identity(int n, const std::vector<int>& shape);

/// Pair of cone charts related by a random ambient transformation:
/// chart1 = (lambda, lambda psi) for a smooth positive lambda, chart2 =
/// tau . chart1, g = lambda^2 times the round metric samples.
struct TauPairFixture {
  GridChart chart1;
  GridChart chart2;
  MetricField g;
  LorentzMap tau;
  CorrespondenceSet pairs;
};

TauPairFixture make_tau_pair(int n, std::uint64_t seed, const std::vector<int>& shape,
                             int steps = 8, double param_bound = 2.0);

/// Exact random cone correspondences y_i = tau x_i, heights in [0.5, 2.5].
CorrespondenceSet make_random_cone_pairs(const LorentzMap& tau, int count, std::uint64_t seed);

/// Restriction of an ambient transformation to a t-levels x sphere-grid
/// product: f = t (a + u.z), image = the sphere action of tau.
SelfMapSamples make_selfmap(const LorentzMap& tau, const std::vector<double>& t_levels,
                            const std::vector<int>& shape);

/// Not a cone self-map: the image ray is rotated by an angle
/// proportional to t, so the rays depend on the level.
SelfMapSamples make_corrupted_selfmap(int n, const std::vector<double>& t_levels,
                                      const std::vector<int>& shape, double twist = 0.5);

/// Sphere pairs from the coordinate-wise cube map, renormalized: smooth,
/// but not the restriction of any ambient transformation.
std::vector<std::pair<Vec, Vec>> make_nonconformal_pairs(int n, int count, std::uint64_t seed);

}  // namespace fixtures
}  // namespace conelift

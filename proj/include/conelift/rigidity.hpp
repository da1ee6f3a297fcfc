#pragma once

#include <utility>
#include <vector>

#include "conelift/analysis.hpp"
#include "conelift/chart.hpp"
#include "conelift/cone.hpp"
#include "conelift/common.hpp"
#include "conelift/lorentz.hpp"

namespace conelift {

/// Sampled correspondences (phi1(p_i), phi2(p_i)) on a common cone.
struct CorrespondenceSet {
  int k = 0;
  int n = 0;
  std::vector<std::pair<Vec, Vec>> pairs;
};

/// Output of the recovery solver.
///
/// status = unique requires the fitted matrix to reproduce every pair
/// and to pass lorentz_check at the run tolerance; underdetermined means
/// the source points fail to span; anything else is inconsistent, with
/// near_miss set when all residuals stay within 10x tolerance.
struct RecoveryReport {
  FitStatus status = FitStatus::underdetermined;
  bool has_tau = false;
  LorentzMap tau;  // valid iff has_tau (status == unique)
  bool has_embedded = false;
  EmbeddedIsometry tau_embedded;  // present iff k != 0 and has_tau
  double max_point_residual = 0.0;
  ValidityReport lorentz_residuals;
  int span_rank = 0;
  double condition_estimate = 0.0;
  bool near_miss = false;
};

/// Recovers the ambient orthochronous transformation with tau x_i = y_i:
/// converts pairs to k=0 coordinates, rank-tests the source matrix
/// (threshold 1e-10 relative), picks n+1 columns by greedy
/// volume-maximizing pivoting, solves the square system exactly and
/// validates against all pairs plus the group conditions. `polish`
/// applies one Newton step toward M^T eta M = eta before validation
/// (off by default; intended for noisy-data experiments).
RecoveryReport recover_tau(const CorrespondenceSet& c, double tol = kDefaultTol,
                           bool polish = false);

struct RigidityReport {
  ImmersionReport immersion1;
  ImmersionReport immersion2;
  bool immersions_ok = false;
  bool recovery_ran = false;
  RecoveryReport recovery;
};

/// Checks both charts are isometric immersions for g, then recovers the
/// relating transformation from the node-wise correspondences. Recovery
/// is skipped when either immersion check fails.
RigidityReport verify_rigidity(const GridChart& chart1, const GridChart& chart2,
                               const MetricField& g, double tol = kDefaultTol,
                               double fd_tol = kDefaultFdTol, Exec exec = Exec::parallel);

/// Samples of a candidate cone self-map over a product grid
/// (t_a, z_b) -> (f_ab, image_ab): t levels cross a sphere-valued chart.
struct SelfMapSamples {
  int n = 0;
  std::vector<double> t_levels;  // >= 2 distinct positive heights
  GridChart sphere;              // sample locations z_b
  Mat f;                         // num_levels x num_nodes image heights
  std::vector<Mat> image;        // per level: num_nodes x n image rays
};

struct ExtendReport {
  bool t_independent = false;
  double t_variation = 0.0;  // max cross-level drift of the image rays
  bool scaling_ok = false;
  double scaling_residual = 0.0;  // max |f^2 P - t^2 G| / |t^2 G|
  bool height_consistent = false;
  double height_residual = 0.0;  // max |t (a + u.z) - f| / max(1, f)
  RecoveryReport recovery;
  bool recovery_ran = false;
  bool pass = false;
};

/// Decides whether the sampled self-map is the restriction of an ambient
/// transformation and recovers it: (i) image rays must not depend on the
/// t level, (ii) f^2 (pullback of the image chart) must equal t^2 times
/// the pullback of the source chart node-wise, (iii) the induced cone
/// correspondences (t, t z) -> (f, f z') feed recover_tau, (iv) the
/// recovered first row must reproduce the sampled heights. Failing (i)
/// or (ii) rejects without attempting recovery.
ExtendReport extend_cone_isometry(const SelfMapSamples& s, double tol = kDefaultTol,
                                  double fd_tol = kDefaultFdTol, Exec exec = Exec::parallel);

/// Overlapping index windows tiling a grid.
struct WindowSpec {
  std::vector<int> size;    // nodes per axis
  std::vector<int> stride;  // start step per axis; < size gives overlap

  /// 2-node windows with unit stride on every axis.
  static WindowSpec default_for(const GridChart& chart);
};

struct LocalityReport {
  std::vector<RecoveryReport> windows;
  std::vector<std::vector<int>> window_origins;
  double max_disagreement = 0.0;  // max pairwise |tau_i - tau_j|_inf over unique windows
  bool all_unique = false;
  bool pass = false;
};

/// Runs the recovery on every window's correspondences and checks the
/// per-window transformations agree: constancy of the pointwise
/// transformation over a connected grid, at sample level.
LocalityReport locality_check(const GridChart& chart1, const GridChart& chart2,
                              const MetricField& g, const WindowSpec& window,
                              double tol = kDefaultTol, double agree_tol = 1e-8);

}  // namespace conelift

#pragma once

#include "conelift/chart.hpp"
#include "conelift/kernels.hpp"

namespace conelift {

/// Per-node scale lambda with psi* g_round = lambda^{-2} g, from the
/// Frobenius projection c = <P, g> / <g, g> of the finite-difference
/// pullback P onto g; lambda = c^{-1/2}.
struct ConformalFactorResult {
  Vec lambda;           // per node
  double max_residual;  // max |P - c g|_F / |g|_F over nodes
};

/// Throws domain_error when c <= 0 at some node (degenerate data, not an
/// immersion). A residual above the caller's tolerance means psi is not
/// conformal with respect to g; the caller decides on the returned value.
ConformalFactorResult extract_conformal_factor(const GridChart& psi, const MetricField& g,
                                               Exec exec = Exec::parallel);

/// Node-wise lift (lambda, lambda psi) onto the k=0 cone, then converted
/// to the target tag. lambda must be positive everywhere.
GridChart cone_lift(const GridChart& psi, const Vec& lambda, int k, Exec exec = Exec::parallel);

struct ImmersionReport {
  bool pass = false;
  double max_metric_deviation = 0.0;  // max |P - g|_F / |g|_F
  double max_cone_residual = 0.0;  // worst cone residual, quadric part scaled by max(1, |p|^2)
  double min_jacobian_sv = 0.0;       // smallest singular value over nodes
  bool full_rank = false;             // min_jacobian_sv > 1e-8; reported, not gating
};

/// Compares the finite-difference pullback of a cone chart against g and
/// checks cone membership of every node.
ImmersionReport verify_isometric_immersion(const GridChart& chart, const MetricField& g,
                                           double tol = kDefaultFdTol,
                                           Exec exec = Exec::parallel);

/// Max relative deviation of the projected chart's round-sphere pullback
/// from t^{-2} g. Non-zero tags are converted to k=0 first. Second-order
/// small on smooth data.
double verify_projected_metric(const GridChart& cone_chart, const MetricField& g,
                               Exec exec = Exec::parallel);

}  // namespace conelift

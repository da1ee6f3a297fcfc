#pragma once

#include <vector>

#include "conelift/chart.hpp"
#include "conelift/common.hpp"
#include "conelift/lorentz.hpp"

namespace conelift {

/// Execution policy for the per-node grid kernels. Both paths run the
/// same per-node code and reductions happen in fixed index order, so
/// results are bit-identical; `serial` is the reference used by tests
/// and the benchmark baseline.
enum class Exec { serial, parallel };

/// Pullback of the ambient bilinear form along the chart values:
/// second-order central differences inside (periodic wrap where
/// flagged), second-order one-sided stencils at non-periodic
/// boundaries, then g_ij = <J_i, J_j>_s per node. Every axis needs at
/// least 3 nodes.
MetricField pullback_metric(const GridChart& chart, const MetricSignature& s,
                            Exec exec = Exec::parallel);

/// Ambient form inferred from the chart target: Euclidean for sphere and
/// plane targets, the cone's flat form for cone targets.
MetricField pullback_metric(const GridChart& chart, Exec exec = Exec::parallel);

/// Finite-difference Jacobian at one node, columns J_i (width x m).
Mat chart_jacobian(const GridChart& chart, Index node);

/// Per-node relative deviation |P_i - G_i|_F / |G_i|_F.
std::vector<double> metric_deviation(const MetricField& P, const MetricField& G,
                                     Exec exec = Exec::parallel);

/// Applies an ambient linear map to every node value (chart2 = M . chart1).
GridChart chart_apply(const Mat& M, const GridChart& chart, Exec exec = Exec::parallel);

/// Sphere action applied to a list of unit row vectors.
Mat mobius_apply_batch(const LorentzMap& m, const Mat& points, Exec exec = Exec::parallel);

}  // namespace conelift

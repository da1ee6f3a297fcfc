#include "conelift/rigidity.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conelift/conformal.hpp"
#include "node_loop.hpp"

namespace conelift {

namespace {

constexpr double kSpanRankThreshold = 1e-10;  // relative singular-value cutoff
constexpr double kPairMembershipTol = 1e-6;   // scale-normalized input gate

void require_on_cone(const Vec& coords, int k, const char* side, std::size_t index) {
  ConePoint p;
  p.k = k;
  p.coords = coords;
  const ConeCheck c = cone_contains(p, kPairMembershipTol);
  const double scale = std::max(1.0, coords.squaredNorm());
  if (!c.future || c.quadric_residual / scale > kPairMembershipTol ||
      c.slice_residual > kPairMembershipTol)
    throw std::invalid_argument(std::string("recover_tau: ") + side + " point of pair " +
                                std::to_string(index) + " is not on the k=" + std::to_string(k) +
                                " cone");
}

}  // namespace

RecoveryReport recover_tau(const CorrespondenceSet& c, double tol, bool polish) {
  if (c.pairs.empty()) throw std::invalid_argument("recover_tau: no pairs");
  if (c.k != 0 && c.k != 1 && c.k != -1)
    throw std::invalid_argument("recover_tau: cone tag must be 0, +1 or -1");
  if (c.n < 2) throw std::invalid_argument("recover_tau: need sphere dimension n >= 2");
  const int n = c.n;
  const Index d = n + 1;
  const Index N = static_cast<Index>(c.pairs.size());
  const int expected_len = c.k == 0 ? n + 1 : n + 2;

  // Everything runs in k=0 coordinates; nonzero tags only strip/restore
  // the fixed slice coordinate.
  Mat X(d, N), Y(d, N);
  for (Index i = 0; i < N; ++i) {
    const auto& [x, y] = c.pairs[static_cast<std::size_t>(i)];
    if (x.size() != expected_len || y.size() != expected_len)
      throw std::invalid_argument("recover_tau: pair " + std::to_string(i) +
                                  " has the wrong coordinate length for its tag");
    require_on_cone(x, c.k, "source", static_cast<std::size_t>(i));
    require_on_cone(y, c.k, "target", static_cast<std::size_t>(i));
    ConePoint px{c.k, x}, py{c.k, y};
    X.col(i) = cone_convert(px, 0).coords;
    Y.col(i) = cone_convert(py, 0).coords;
  }

  RecoveryReport rep;

  Eigen::JacobiSVD<Mat> svd(X);
  const Vec sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv[i] >= kSpanRankThreshold * smax) ++rank;
  rep.span_rank = rank;

  if (rank < d) {
    rep.status = FitStatus::underdetermined;
    const double smin = sv[sv.size() - 1];
    rep.condition_estimate =
        smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    return rep;
  }

  // Column-pivoted QR pivots are exactly the greedy volume-maximizing
  // choice: each step takes the column with the largest component
  // orthogonal to the span already selected.
  Eigen::ColPivHouseholderQR<Mat> qr(X);
  const auto& perm = qr.colsPermutation().indices();
  Mat Xs(d, d), Ys(d, d);
  for (Index j = 0; j < d; ++j) {
    Xs.col(j) = X.col(perm[j]);
    Ys.col(j) = Y.col(perm[j]);
  }

  Eigen::JacobiSVD<Mat> svd_s(Xs);
  const Vec sv_s = svd_s.singularValues();
  rep.condition_estimate = sv_s[sv_s.size() - 1] > 0.0
                               ? sv_s[0] / sv_s[sv_s.size() - 1]
                               : std::numeric_limits<double>::infinity();

  // tau Xs = Ys  <=>  Xs^T tau^T = Ys^T
  Mat tau = Xs.transpose().partialPivLu().solve(Ys.transpose()).transpose();

  if (polish) {
    // One Newton step toward M^T eta M = eta (hyperbolic polar iteration).
    const Mat eta = signature_matrix(sig_minkowski(n));
    const Mat S = tau.transpose() * eta * tau;
    tau = 0.5 * tau * (Mat::Identity(d, d) + S.partialPivLu().solve(eta));
  }

  double worst = 0.0;
  for (Index i = 0; i < N; ++i) {
    const double r = (tau * X.col(i) - Y.col(i)).norm() / X.col(i).norm();
    worst = std::max(worst, r);
  }
  rep.max_point_residual = worst;
  rep.lorentz_residuals = lorentz_check(tau, tol);

  const bool fits = worst <= tol;
  if (fits && rep.lorentz_residuals.pass) {
    rep.status = FitStatus::unique;
    rep.has_tau = true;
    rep.tau = LorentzMap(tau);
    if (c.k != 0) {
      rep.has_embedded = true;
      rep.tau_embedded = block_embed(rep.tau, c.k);
    }
  } else {
    rep.status = FitStatus::inconsistent;
    rep.near_miss = rep.lorentz_residuals.orthochronous && worst <= 10.0 * tol &&
                    rep.lorentz_residuals.max_block_residual() <= 10.0 * tol;
  }
  return rep;
}

RigidityReport verify_rigidity(const GridChart& chart1, const GridChart& chart2,
                               const MetricField& g, double tol, double fd_tol, Exec exec) {
  chart1.validate();
  chart2.validate();
  if (!chart1.same_grid(chart2))
    throw std::invalid_argument("verify_rigidity: charts live on different grids");
  if (chart1.target != Target::cone || chart2.target != Target::cone)
    throw std::invalid_argument("verify_rigidity: expects cone-valued charts");
  if (chart1.k != chart2.k || chart1.n != chart2.n)
    throw std::invalid_argument("verify_rigidity: charts target different cones");

  RigidityReport rep;
  rep.immersion1 = verify_isometric_immersion(chart1, g, fd_tol, exec);
  rep.immersion2 = verify_isometric_immersion(chart2, g, fd_tol, exec);
  rep.immersions_ok = rep.immersion1.pass && rep.immersion2.pass;
  if (!rep.immersions_ok) return rep;

  CorrespondenceSet c;
  c.k = chart1.k;
  c.n = chart1.n;
  c.pairs.reserve(static_cast<std::size_t>(chart1.num_nodes()));
  for (Index i = 0; i < chart1.num_nodes(); ++i)
    c.pairs.emplace_back(chart1.values.row(i).transpose(), chart2.values.row(i).transpose());
  rep.recovery = recover_tau(c, tol);
  rep.recovery_ran = true;
  return rep;
}

ExtendReport extend_cone_isometry(const SelfMapSamples& s, double tol, double fd_tol,
                                  Exec exec) {
  s.sphere.validate();
  if (s.sphere.target != Target::sphere)
    throw std::invalid_argument("extend_cone_isometry: sample locations must be sphere-valued");
  if (s.n != s.sphere.n)
    throw std::invalid_argument("extend_cone_isometry: dimension mismatch with the sphere grid");
  const Index levels = static_cast<Index>(s.t_levels.size());
  const Index nodes = s.sphere.num_nodes();
  if (levels < 2)
    throw std::invalid_argument("extend_cone_isometry: need at least 2 t-levels");
  for (Index a = 0; a < levels; ++a) {
    if (!(s.t_levels[static_cast<std::size_t>(a)] > 0.0))
      throw std::invalid_argument("extend_cone_isometry: t-levels must be positive");
    for (Index b = a + 1; b < levels; ++b)
      if (s.t_levels[static_cast<std::size_t>(a)] == s.t_levels[static_cast<std::size_t>(b)])
        throw std::invalid_argument("extend_cone_isometry: t-levels must be distinct");
  }
  if (s.f.rows() != levels || s.f.cols() != nodes)
    throw std::invalid_argument("extend_cone_isometry: height table shape mismatch");
  if (static_cast<Index>(s.image.size()) != levels)
    throw std::invalid_argument("extend_cone_isometry: image level count mismatch");
  for (const Mat& img : s.image)
    if (img.rows() != nodes || img.cols() != s.n)
      throw std::invalid_argument("extend_cone_isometry: image table shape mismatch");

  ExtendReport rep;

  // (i) the image ray must not depend on the level.
  double drift = 0.0;
  for (Index a = 1; a < levels; ++a)
    drift = std::max(drift, (s.image[static_cast<std::size_t>(a)] - s.image[0])
                                .cwiseAbs()
                                .maxCoeff());
  rep.t_variation = drift;
  rep.t_independent = drift <= tol;

  // (ii) conformal scaling: f^2 (image pullback) = t^2 (source pullback).
  const MetricField P = pullback_metric(s.sphere, sig_euclidean(s.n), exec);
  double scaling = 0.0;
  for (Index a = 0; a < levels; ++a) {
    GridChart img = s.sphere;
    img.values = s.image[static_cast<std::size_t>(a)];
    const MetricField Pi = pullback_metric(img, sig_euclidean(s.n), exec);
    const double t = s.t_levels[static_cast<std::size_t>(a)];
    std::vector<double> dev(static_cast<std::size_t>(nodes), 0.0);
    detail::run_nodes(nodes, exec, [&](Index b) {
      const double f = s.f(a, b);
      const auto lhs = f * f * Pi.values.row(b);
      const auto rhs = t * t * P.values.row(b);
      const double ref = rhs.norm();
      dev[static_cast<std::size_t>(b)] = ref > 0.0 ? (lhs - rhs).norm() / ref : (lhs - rhs).norm();
    });
    for (double x : dev) scaling = std::max(scaling, x);
  }
  rep.scaling_residual = scaling;
  rep.scaling_ok = scaling <= fd_tol;

  if (!rep.t_independent || !rep.scaling_ok) {
    rep.pass = false;
    return rep;  // not a cone self-map; no extension attempted
  }

  // (iii) induced cone correspondences (t, t z) -> (f, f z').
  CorrespondenceSet c;
  c.k = 0;
  c.n = s.n;
  c.pairs.reserve(static_cast<std::size_t>(levels * nodes));
  for (Index a = 0; a < levels; ++a) {
    const double t = s.t_levels[static_cast<std::size_t>(a)];
    const Mat& img = s.image[static_cast<std::size_t>(a)];
    for (Index b = 0; b < nodes; ++b) {
      Vec x(s.n + 1), y(s.n + 1);
      x[0] = t;
      x.tail(s.n) = t * s.sphere.values.row(b).transpose();
      const double f = s.f(a, b);
      y[0] = f;
      y.tail(s.n) = f * img.row(b).transpose();
      c.pairs.emplace_back(std::move(x), std::move(y));
    }
  }
  rep.recovery = recover_tau(c, tol);
  rep.recovery_ran = true;

  // (iv) the recovered first row must reproduce the sampled heights.
  if (rep.recovery.status == FitStatus::unique) {
    const double a0 = rep.recovery.tau.a();
    const Vec u = rep.recovery.tau.u();
    double worst = 0.0;
    for (Index a = 0; a < levels; ++a) {
      const double t = s.t_levels[static_cast<std::size_t>(a)];
      for (Index b = 0; b < nodes; ++b) {
        const double predicted = t * (a0 + u.dot(s.sphere.values.row(b).transpose()));
        const double f = s.f(a, b);
        worst = std::max(worst, std::abs(predicted - f) / std::max(1.0, std::abs(f)));
      }
    }
    rep.height_residual = worst;
    rep.height_consistent = worst <= tol;
  }

  rep.pass = rep.t_independent && rep.scaling_ok &&
             rep.recovery.status == FitStatus::unique && rep.height_consistent;
  return rep;
}

WindowSpec WindowSpec::default_for(const GridChart& chart) {
  WindowSpec w;
  w.size.assign(static_cast<std::size_t>(chart.m), 2);
  w.stride.assign(static_cast<std::size_t>(chart.m), 1);
  return w;
}

namespace {

void enumerate_origins(const GridChart& chart, const WindowSpec& w, int axis,
                       std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (axis == chart.m) {
    out.push_back(cur);
    return;
  }
  const int len = chart.shape[axis];
  const int size = w.size[static_cast<std::size_t>(axis)];
  const int stride = w.stride[static_cast<std::size_t>(axis)];
  const int limit = chart.periodic[axis] ? len : len - size + 1;
  for (int o = 0; o < limit; o += stride) {
    cur[static_cast<std::size_t>(axis)] = o;
    enumerate_origins(chart, w, axis + 1, cur, out);
  }
}

void collect_window_nodes(const GridChart& chart, const WindowSpec& w,
                          const std::vector<int>& origin, int axis, std::vector<int>& idx,
                          std::vector<Index>& out) {
  if (axis == chart.m) {
    out.push_back(chart.flat_index(idx));
    return;
  }
  for (int off = 0; off < w.size[static_cast<std::size_t>(axis)]; ++off) {
    idx[static_cast<std::size_t>(axis)] = origin[static_cast<std::size_t>(axis)] + off;
    collect_window_nodes(chart, w, origin, axis + 1, idx, out);
  }
}

}  // namespace

LocalityReport locality_check(const GridChart& chart1, const GridChart& chart2,
                              const MetricField& g, const WindowSpec& window, double tol,
                              double agree_tol) {
  chart1.validate();
  chart2.validate();
  if (!chart1.same_grid(chart2))
    throw std::invalid_argument("locality_check: charts live on different grids");
  if (chart1.k != chart2.k || chart1.n != chart2.n)
    throw std::invalid_argument("locality_check: charts target different cones");
  if (g.m != chart1.m || g.num_nodes() != chart1.num_nodes())
    throw std::invalid_argument("locality_check: metric field shape mismatch");
  if (static_cast<int>(window.size.size()) != chart1.m ||
      static_cast<int>(window.stride.size()) != chart1.m)
    throw std::invalid_argument("locality_check: window arity does not match the grid");
  for (int axis = 0; axis < chart1.m; ++axis) {
    if (window.size[static_cast<std::size_t>(axis)] < 1 ||
        window.stride[static_cast<std::size_t>(axis)] < 1)
      throw std::invalid_argument("locality_check: window sizes and strides must be positive");
    if (!chart1.periodic[axis] &&
        window.size[static_cast<std::size_t>(axis)] > chart1.shape[axis])
      throw std::invalid_argument("locality_check: window exceeds a non-periodic axis");
  }

  LocalityReport rep;
  std::vector<int> cur(static_cast<std::size_t>(chart1.m), 0);
  enumerate_origins(chart1, window, 0, cur, rep.window_origins);

  for (const auto& origin : rep.window_origins) {
    std::vector<Index> nodes;
    std::vector<int> idx(static_cast<std::size_t>(chart1.m), 0);
    collect_window_nodes(chart1, window, origin, 0, idx, nodes);
    CorrespondenceSet c;
    c.k = chart1.k;
    c.n = chart1.n;
    c.pairs.reserve(nodes.size());
    for (Index node : nodes)
      c.pairs.emplace_back(chart1.values.row(node).transpose(),
                           chart2.values.row(node).transpose());
    rep.windows.push_back(recover_tau(c, tol));
  }

  rep.all_unique = !rep.windows.empty();
  for (const auto& w : rep.windows)
    rep.all_unique = rep.all_unique && w.status == FitStatus::unique;

  double worst = 0.0;
  for (std::size_t i = 0; i < rep.windows.size(); ++i) {
    if (rep.windows[i].status != FitStatus::unique) continue;
    for (std::size_t j = i + 1; j < rep.windows.size(); ++j) {
      if (rep.windows[j].status != FitStatus::unique) continue;
      worst = std::max(worst, (rep.windows[i].tau.entries - rep.windows[j].tau.entries)
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  rep.max_disagreement = worst;
  rep.pass = rep.all_unique && worst <= agree_tol;
  return rep;
}

}  // namespace conelift

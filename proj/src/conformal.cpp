#include "conelift/conformal.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "conelift/rng.hpp"

namespace conelift {

namespace {

void require_unit(const Vec& z, const char* who) {
  if (std::abs(z.norm() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(who) + ": input is not a unit vector");
}

}  // namespace

Vec stereo_project(const Vec& z) {
  if (z.size() < 2) throw std::invalid_argument("stereo_project: need at least 2 coordinates");
  require_unit(z, "stereo_project");
  const double denom = 1.0 - z[0];
  if (denom <= 1e-12) throw pole_error("stereo_project: input at the projection pole");
  return z.tail(z.size() - 1) / denom;
}

Vec stereo_unproject(const Vec& w) {
  const Index d = w.size();
  if (d < 1) throw std::invalid_argument("stereo_unproject: empty input");
  const double s = w.squaredNorm();
  Vec z(d + 1);
  z[0] = (s - 1.0) / (s + 1.0);
  z.tail(d) = 2.0 * w / (s + 1.0);
  return z;
}

Vec mobius_apply(const LorentzMap& m, const Vec& z) {
  const int n = m.n();
  if (z.size() != n) throw std::invalid_argument("mobius_apply: dimension mismatch");
  require_unit(z, "mobius_apply");
  const double den = m.u().dot(z) + m.a();
  if (den <= 0.0)
    throw std::domain_error("mobius_apply: non-positive denominator (matrix not orthochronous?)");
  Vec y = (m.A() * z + m.v()) / den;
  return y / y.norm();  // snap rounding drift back to the sphere
}

double mobius_conformal_factor(const LorentzMap& m, const Vec& z) {
  const int n = m.n();
  if (z.size() != n) throw std::invalid_argument("mobius_conformal_factor: dimension mismatch");
  require_unit(z, "mobius_conformal_factor");
  const double den = m.u().dot(z) + m.a();
  if (den <= 0.0)
    throw std::domain_error(
        "mobius_conformal_factor: non-positive denominator (matrix not orthochronous?)");
  return 1.0 / den;
}

LorentzMap gen_dilation(int n, double lambda) {
  if (n < 2) throw std::invalid_argument("gen_dilation: n must be at least 2");
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw std::invalid_argument("gen_dilation: lambda must be nonzero and finite");
  const double c = 0.5 * (lambda + 1.0 / lambda);
  const double s = 0.5 * (lambda - 1.0 / lambda);
  Vec e1 = Vec::Zero(n);
  e1[0] = 1.0;
  Mat A = Mat::Identity(n, n);
  A(0, 0) = c;
  LorentzMap m = LorentzMap::from_blocks(c, s * e1, s * e1, A);
  if (lambda < 0.0) m.entries = -m.entries;  // keeps a > 0
  return m;
}

LorentzMap gen_rotation(const Mat& B) {
  const Index d = B.rows();
  if (d < 1 || B.cols() != d) throw std::invalid_argument("gen_rotation: B must be square");
  const double ortho = (B.transpose() * B - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
  if (ortho > 1e-10) throw std::invalid_argument("gen_rotation: B is not orthogonal");
  const int n = static_cast<int>(d) + 1;
  Mat A = Mat::Identity(n, n);
  A.bottomRightCorner(d, d) = B;
  return LorentzMap::from_blocks(1.0, Vec::Zero(n), Vec::Zero(n), A);
}

LorentzMap gen_inversion(const Vec& w0) {
  const Index d = w0.size();
  if (d < 1) throw std::invalid_argument("gen_inversion: empty center");
  const int n = static_cast<int>(d) + 1;
  const double s = 0.5 * w0.squaredNorm();
  Vec u(n);
  u[0] = -s;
  u.tail(d) = -w0;
  Mat A(n, n);
  A(0, 0) = -1.0 + s;
  A.row(0).tail(d) = w0.transpose();
  A.col(0).tail(d) = w0;
  A.bottomRightCorner(d, d) = Mat::Identity(d, d);
  return LorentzMap::from_blocks(1.0 + s, u, u, A);
}

LorentzMap gen_translation(const Vec& b) {
  const Index d = b.size();
  if (d < 1) throw std::invalid_argument("gen_translation: empty offset");
  const int n = static_cast<int>(d) + 1;
  const double s = 0.5 * b.squaredNorm();
  Vec u(n), v(n);
  u[0] = -s;
  u.tail(d) = b;
  v[0] = s;
  v.tail(d) = b;
  Mat A(n, n);
  A(0, 0) = 1.0 - s;
  A.row(0).tail(d) = b.transpose();
  A.col(0).tail(d) = -b;
  A.bottomRightCorner(d, d) = Mat::Identity(d, d);
  return LorentzMap::from_blocks(1.0 + s, u, v, A);
}

LorentzMap random_conformal(int n, std::uint64_t seed, int steps, double param_bound) {
  if (n < 2) throw std::invalid_argument("random_conformal: n must be at least 2");
  if (steps < 0) throw std::invalid_argument("random_conformal: steps must be nonnegative");
  if (param_bound < 1.0)
    throw std::invalid_argument("random_conformal: param_bound must be at least 1");
  Rng rng(seed);
  LorentzMap acc = LorentzMap::identity(n);
  for (int i = 0; i < steps; ++i) {
    LorentzMap g;
    switch (rng.below(4)) {
      case 0: g = gen_dilation(n, rng.uniform(1.0 / param_bound, param_bound)); break;
      case 1: g = gen_rotation(rng.orthogonal(n - 1)); break;
      case 2: g = gen_inversion(rng.ball_vector(n - 1, param_bound)); break;
      default: g = gen_translation(rng.ball_vector(n - 1, param_bound)); break;
    }
    acc = lorentz_compose(g, acc);
  }
  return acc;
}

namespace {

/// Chordal distance between the candidate's image of z and the observed
/// z~ (clamped to the sphere diameter when the image degenerates).
double pair_residual(const Mat& M, const Vec& z, const Vec& zt) {
  const Index n = z.size();
  Vec q(n + 1);
  q[0] = 1.0;
  q.tail(n) = z;
  const Vec p = M * q;
  if (p[0] <= 1e-300) return 2.0;
  Vec y = p.tail(n) / p[0];
  const double norm = y.norm();
  if (norm <= 1e-300) return 2.0;
  return (y / norm - zt).norm();
}

}  // namespace

ConformalFit conformal_to_lorentz(const std::vector<std::pair<Vec, Vec>>& pairs, double tol) {
  if (pairs.empty()) throw std::invalid_argument("conformal_to_lorentz: no pairs");
  const Index n = pairs.front().first.size();
  if (n < 2) throw std::invalid_argument("conformal_to_lorentz: points must have dimension >= 2");
  for (const auto& [z, zt] : pairs) {
    if (z.size() != n || zt.size() != n)
      throw std::invalid_argument("conformal_to_lorentz: inconsistent point dimensions");
    require_unit(z, "conformal_to_lorentz");
    require_unit(zt, "conformal_to_lorentz");
  }
  // One pair (z, z~) constrains M (1,z) to be parallel to (1,z~) with a
  // positive scale. Eliminating the scale leaves n homogeneous equations
  //   row_j(M).q - z~_j row_0(M).q = 0,  q = (1, z),
  // in the (n+1)^2 entries of M (row-major unknown vector).
  const Index d = n + 1;
  const Index cols = d * d;
  const Index rows = static_cast<Index>(pairs.size()) * n;
  Mat S = Mat::Zero(rows, cols);
  for (Index i = 0; i < static_cast<Index>(pairs.size()); ++i) {
    const Vec& z = pairs[i].first;
    const Vec& zt = pairs[i].second;
    Vec q(d);
    q[0] = 1.0;
    q.tail(n) = z;
    for (Index j = 1; j <= n; ++j) {
      const Index r = i * n + (j - 1);
      S.row(r).segment(j * d, d) = q.transpose();
      S.row(r).segment(0, d) -= zt[j - 1] * q.transpose();
    }
  }

  Eigen::JacobiSVD<Mat> svd(S, Eigen::ComputeFullV);
  Vec sv = Vec::Zero(cols);  // pad implicit zeros when rows < cols
  sv.head(svd.singularValues().size()) = svd.singularValues();

  ConformalFit fit;
  fit.sigma_max = sv[0];
  fit.sigma_min = sv[cols - 1];
  fit.sigma_second_min = sv[cols - 2];
  if (fit.sigma_max <= 0.0 || fit.sigma_second_min < tol * fit.sigma_max) {
    fit.status = FitStatus::underdetermined;
    return fit;
  }

  Vec mvec = svd.matrixV().col(cols - 1);
  Mat M(d, d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) M(r, c) = mvec[r * d + c];
  if (M(0, 0) < 0.0) M = -M;

  const double scale2 = M(0, 0) * M(0, 0) - M.col(0).tail(n).squaredNorm();
  if (scale2 <= 1e-300) {
    // The fitted direction cannot be normalized to a^2 - |v|^2 = 1: the
    // data are not samples of a sphere action of this group.
    fit.status = FitStatus::inconsistent;
    fit.tau_check = lorentz_check(M, tol);
    double worst = 0.0;
    for (const auto& [z, zt] : pairs) worst = std::max(worst, pair_residual(M, z, zt));
    fit.max_pair_residual = worst;
    return fit;
  }
  M /= std::sqrt(scale2);

  fit.tau = LorentzMap(M);
  fit.tau_check = lorentz_check(M, tol);
  double worst = 0.0;
  for (const auto& [z, zt] : pairs) worst = std::max(worst, pair_residual(M, z, zt));
  fit.max_pair_residual = worst;
  fit.status = (fit.tau_check.pass && fit.max_pair_residual <= tol) ? FitStatus::unique
                                                                    : FitStatus::inconsistent;
  return fit;
}

}  // namespace conelift

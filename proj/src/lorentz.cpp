#include "conelift/lorentz.hpp"

#include <cmath>

namespace conelift {

double minkowski_inner(const Vec& x, const Vec& y, const MetricSignature& s) {
  if (s.p < 0 || s.q < 1) throw std::invalid_argument("signature must have p >= 0, q >= 1");
  if (x.size() != s.dim() || y.size() != s.dim())
    throw std::invalid_argument("minkowski_inner: vector length does not match signature");
  double acc = 0.0;
  for (int i = 0; i < s.p; ++i) acc -= x[i] * y[i];
  for (int i = s.p; i < s.dim(); ++i) acc += x[i] * y[i];
  return acc;
}

Mat signature_matrix(const MetricSignature& s) {
  Mat eta = Mat::Identity(s.dim(), s.dim());
  for (int i = 0; i < s.p; ++i) eta(i, i) = -1.0;
  return eta;
}

LorentzMap LorentzMap::identity(int n) { return LorentzMap(Mat::Identity(n + 1, n + 1)); }

LorentzMap LorentzMap::from_blocks(double a, const Vec& u, const Vec& v, const Mat& A) {
  const int n = static_cast<int>(u.size());
  if (v.size() != n || A.rows() != n || A.cols() != n)
    throw std::invalid_argument("from_blocks: inconsistent block sizes");
  Mat m(n + 1, n + 1);
  m(0, 0) = a;
  m.row(0).tail(n) = u.transpose();
  m.col(0).tail(n) = v;
  m.bottomRightCorner(n, n) = A;
  return LorentzMap(std::move(m));
}

double ValidityReport::max_block_residual() const {
  return std::max({residual_scalar, residual_mixed, residual_block});
}

ValidityReport lorentz_check(const Mat& M, double tol) {
  if (M.rows() != M.cols() || M.rows() < 2)
    throw std::invalid_argument("lorentz_check: matrix must be square, at least 2x2");
  const int n = static_cast<int>(M.rows()) - 1;
  const double a = M(0, 0);
  const Vec u = M.row(0).tail(n).transpose();
  const Vec v = M.col(0).tail(n);
  const Mat A = M.bottomRightCorner(n, n);

  ValidityReport r;
  r.residual_scalar = std::abs(a * a - v.squaredNorm() - 1.0);
  r.residual_mixed = n > 0 ? (A.transpose() * v - a * u).cwiseAbs().maxCoeff() : 0.0;
  r.residual_block =
      (A.transpose() * A - u * u.transpose() - Mat::Identity(n, n)).cwiseAbs().maxCoeff();

  const Mat eta = signature_matrix(sig_minkowski(n));
  r.residual_global = (M.transpose() * eta * M - eta).cwiseAbs().maxCoeff();

  r.orthochronous = a > 0.0;
  const double det = M.determinant();
  r.det_sign = det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  r.pass = r.orthochronous && r.residual_scalar <= tol && r.residual_mixed <= tol &&
           r.residual_block <= tol;
  return r;
}

ValidityReport lorentz_check(const LorentzMap& m, double tol) {
  return lorentz_check(m.entries, tol);
}

LorentzMap lorentz_compose(const LorentzMap& m1, const LorentzMap& m2) {
  if (m1.n() != m2.n()) throw std::invalid_argument("lorentz_compose: dimension mismatch");
  return LorentzMap(m1.entries * m2.entries);
}

LorentzMap lorentz_inverse(const LorentzMap& m) {
  const int n = m.n();
  if (n < 1) throw std::invalid_argument("lorentz_inverse: invalid matrix");
  const Mat eta = signature_matrix(sig_minkowski(n));
  return LorentzMap(eta * m.entries.transpose() * eta);
}

Mat EmbeddedIsometry::core() const {
  const int d = n() + 1;
  if (k == 1) return entries.topLeftCorner(d, d);
  return entries.bottomRightCorner(d, d);
}

EmbeddedIsometry block_embed(const LorentzMap& m, int k) {
  if (k != 1 && k != -1) throw std::invalid_argument("block_embed: k must be +1 or -1");
  const int d = m.n() + 1;
  Mat e = Mat::Identity(d + 1, d + 1);
  if (k == 1) {
    e.topLeftCorner(d, d) = m.entries;  // trailing unit block fixes the slice coordinate
  } else {
    e.bottomRightCorner(d, d) = m.entries;  // leading unit block fixes t_1
  }
  return EmbeddedIsometry{std::move(e), k};
}

ValidityReport embedded_check(const EmbeddedIsometry& e, double tol) {
  const int d = e.n() + 1;
  if (e.entries.rows() != d + 1 || e.entries.cols() != d + 1)
    throw std::invalid_argument("embedded_check: matrix must be square");
  ValidityReport r = lorentz_check(e.core(), tol);
  // The border must be an exact unit block.
  double border = 0.0;
  const Index fixed = e.k == 1 ? d : 0;
  for (Index i = 0; i <= d; ++i) {
    const double want_ri = i == fixed ? 1.0 : 0.0;
    border = std::max(border, std::abs(e.entries(fixed, i) - want_ri));
    border = std::max(border, std::abs(e.entries(i, fixed) - want_ri));
  }
  if (border > 0.0) {
    r.pass = false;
    r.residual_block = std::max(r.residual_block, border);
  }
  return r;
}

}  // namespace conelift

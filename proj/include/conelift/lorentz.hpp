#pragma once

#include <stdexcept>

#include "conelift/common.hpp"

namespace conelift {

/// Signature of a flat ambient bilinear form diag(-1,...,-1,+1,...,+1),
/// p minus signs first, then q plus signs. Time components always come
/// first in the coordinate vectors.
struct MetricSignature {
  int p = 1;
  int q = 1;

  int dim() const { return p + q; }
};

inline MetricSignature sig_euclidean(int d) { return {0, d}; }
inline MetricSignature sig_minkowski(int n) { return {1, n}; }
inline MetricSignature sig_de_sitter(int n) { return {1, n + 1}; }
inline MetricSignature sig_anti_de_sitter(int n) { return {2, n}; }

/// <x,y> = -sum_{i<p} x_i y_i + sum_{i>=p} x_i y_i.
double minkowski_inner(const Vec& x, const Vec& y, const MetricSignature& s);

/// diag(-1,...,-1,+1,...,+1) as a dense matrix.
Mat signature_matrix(const MetricSignature& s);

/// Element of O_+(1,n) in block form
///
///   [ a  u^T ]
///   [ v   A  ]
///
/// with a scalar, u,v in R^n, A n x n. Membership is equivalent to
///   a^2 - |v|^2 = 1,  A^T v - a u = 0,  A^T A - u u^T = I_n,  a > 0.
/// Construction does not validate; use lorentz_check.
struct LorentzMap {
  Mat entries;  // (n+1) x (n+1), dense row-major semantics

  LorentzMap() = default;
  explicit LorentzMap(Mat m) : entries(std::move(m)) {}

  int n() const { return static_cast<int>(entries.rows()) - 1; }

  double a() const { return entries(0, 0); }
  Vec u() const { return entries.row(0).tail(n()).transpose(); }
  Vec v() const { return entries.col(0).tail(n()); }
  Mat A() const { return entries.bottomRightCorner(n(), n()); }

  static LorentzMap identity(int n);
  static LorentzMap from_blocks(double a, const Vec& u, const Vec& v, const Mat& A);
};

/// Residuals of the block membership conditions. pass requires all
/// residuals within tolerance and a > 0. det_sign records space
/// orientation (+1/-1) and does not affect pass.
struct ValidityReport {
  double residual_scalar = 0.0;  // |a^2 - |v|^2 - 1|
  double residual_mixed = 0.0;   // max |A^T v - a u|
  double residual_block = 0.0;   // max |A^T A - u u^T - I|
  double residual_global = 0.0;  // max |M^T eta M - eta|, cross-check
  bool orthochronous = false;
  int det_sign = 0;
  bool pass = false;

  double max_block_residual() const;
};

/// Evaluates the block conditions on an arbitrary square matrix.
ValidityReport lorentz_check(const Mat& M, double tol = kDefaultTol);
ValidityReport lorentz_check(const LorentzMap& m, double tol = kDefaultTol);

/// Matrix product. Callers are expected to pass valid group elements;
/// only dimensions are enforced here.
LorentzMap lorentz_compose(const LorentzMap& m1, const LorentzMap& m2);

/// Exact algebraic inverse eta M^T eta, eta = diag(-1, I_n).
LorentzMap lorentz_inverse(const LorentzMap& m);

/// Image of a LorentzMap inside the isometry group of the curved target,
/// tagged by k: +1 appends a trailing unit block (acts on R^{1,n+1}),
/// -1 prepends a leading unit block (acts on R^{2,n}).
struct EmbeddedIsometry {
  Mat entries;  // (n+2) x (n+2)
  int k = 0;

  int n() const { return static_cast<int>(entries.rows()) - 2; }

  /// The inner (n+1) x (n+1) block.
  Mat core() const;
};

EmbeddedIsometry block_embed(const LorentzMap& m, int k);

/// Checks an (n+2) x (n+2) matrix carries the exact block-diagonal shape
/// for its tag and that the core passes lorentz_check.
ValidityReport embedded_check(const EmbeddedIsometry& e, double tol = kDefaultTol);

}  // namespace conelift

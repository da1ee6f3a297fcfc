#pragma once

#include "conelift/common.hpp"
#include "conelift/lorentz.hpp"

namespace conelift {

/// Point on a future light cone, in the flat coordinates of its ambient:
///   k =  0: (t, x)       in R^{1,n},   -t^2 + |x|^2 = 0, t > 0
///   k = +1: (t, x, x_{n+1}) in R^{1,n+1}, slice x_{n+1} = 1
///   k = -1: (t_1, t_2, x) in R^{2,n},  slice t_1 = 1
struct ConePoint {
  int k = 0;
  Vec coords;

  /// Sphere dimension parameter n implied by k and the coordinate length.
  int n() const;
};

inline MetricSignature cone_ambient_signature(int k, int n) {
  if (k == 0) return sig_minkowski(n);
  if (k == 1) return sig_de_sitter(n);
  if (k == -1) return sig_anti_de_sitter(n);
  throw std::invalid_argument("cone tag k must be 0, +1 or -1");
}

struct ConeCheck {
  bool pass = false;
  double quadric_residual = 0.0;  // |null-cone quadric|
  double slice_residual = 0.0;    // |x_{n+1} - 1| or |t_1 - 1|; 0 for k = 0
  bool future = false;            // time component positive

  double max_residual() const { return std::max(quadric_residual, slice_residual); }
};

ConeCheck cone_contains(const ConePoint& p, double tol = 1e-10);

/// Identifications between the three cones. k=0 <-> k=+1 appends/strips a
/// trailing 1; k=0 <-> k=-1 prepends/strips a leading 1. Other routes
/// compose through k=0. Round trips are bit-exact.
ConePoint cone_convert(const ConePoint& p, int k_to);

/// Projection to the sphere of null rays: x/t in k=0 coordinates
/// (non-zero tags are converted first).
Vec cone_project(const ConePoint& p);

/// (t, t z) on the k=0 cone from the ray sphere point z and height t.
ConePoint cone_from_sphere(double t, const Vec& z, int k = 0);

}  // namespace conelift

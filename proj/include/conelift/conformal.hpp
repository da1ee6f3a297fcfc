#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conelift/common.hpp"
#include "conelift/lorentz.hpp"

namespace conelift {

/// Raised when stereographic projection is evaluated at the pole
/// z = e_1. There is no point-at-infinity encoding; callers branch.
struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// w = z' / (1 - z_1) for unit z = (z_1, z'). Throws pole_error when
/// 1 - z_1 <= 1e-12.
Vec stereo_project(const Vec& z);

/// z_1 = (|w|^2 - 1)/(|w|^2 + 1), z' = 2w/(|w|^2 + 1). Total inverse of
/// stereo_project; the origin maps to -e_1.
Vec stereo_unproject(const Vec& w);

/// Sphere action z -> (A z + v)/(u^T z + a) of a Lorentz matrix in block
/// form. The denominator is the image time component of (1, z) and is
/// positive for every orthochronous map; a non-positive value throws.
/// The result is snapped back to unit norm (drift <= 1e-12).
Vec mobius_apply(const LorentzMap& m, const Vec& z);

/// Pointwise conformal stretch sigma(z) = 1/(u^T z + a): the pullback of
/// the round metric along the sphere action equals sigma^2 times the
/// round metric at z.
double mobius_conformal_factor(const LorentzMap& m, const Vec& z);

/// Lift of the plane dilation w -> lambda w. For lambda > 0:
///   a = (lambda + 1/lambda)/2, u = v = (lambda - 1/lambda)/2 e_1,
///   A = diag(a, 1, ..., 1).
/// For lambda < 0 all four blocks are negated, which keeps a > 0.
LorentzMap gen_dilation(int n, double lambda);

/// Lift of w -> B w with B orthogonal: a = 1, u = v = 0, A = diag(1, B).
/// Requires |B^T B - I|_max <= 1e-10.
LorentzMap gen_rotation(const Mat& B);

/// Lift of the inversion w -> (w - w0)/|w - w0|^2.
LorentzMap gen_inversion(const Vec& w0);

/// Lift of the translation w -> w + b.
LorentzMap gen_translation(const Vec& b);

/// Deterministic composition of `steps` random generators with parameters
/// bounded by param_bound: dilations with lambda in [1/param_bound,
/// param_bound], translations and inversion centers with norm <=
/// param_bound, rotations Haar-ish via QR. steps = 0 gives the identity.
LorentzMap random_conformal(int n, std::uint64_t seed, int steps, double param_bound);

/// Result of estimating a Lorentz matrix from sampled sphere
/// correspondences (z_i, z~_i) with M (1, z_i) proportional to (1, z~_i).
struct ConformalFit {
  FitStatus status = FitStatus::underdetermined;
  LorentzMap tau;                 // meaningful iff status == unique
  double max_pair_residual = 0.;  // max chordal distance over pairs
  double sigma_max = 0.;          // largest singular value of the system
  double sigma_second_min = 0.;   // second smallest; gap certifies uniqueness
  double sigma_min = 0.;          // smallest
  ValidityReport tau_check;
};

/// Homogeneous linear estimation: eliminate the per-pair scales, take the
/// least-squares null direction of the stacked system, rescale so that
/// a^2 - |v|^2 = 1 with a > 0. Needs n+2 spanning pairs for a
/// one-dimensional null space; a second near-zero singular value (below
/// 1e-8 of the largest) reports underdetermined.
ConformalFit conformal_to_lorentz(const std::vector<std::pair<Vec, Vec>>& pairs,
                                  double tol = 1e-8);

}  // namespace conelift

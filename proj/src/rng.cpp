#include "conelift/rng.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conelift {

double Rng::gauss() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Vec Rng::unit_vector(int d) {
  if (d < 1) throw std::invalid_argument("Rng::unit_vector: dimension must be positive");
  Vec x(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) x[i] = gauss();
    norm = x.norm();
  } while (norm < 1e-12);
  return x / norm;
}

Vec Rng::ball_vector(int d, double radius) {
  if (radius < 0.0) throw std::invalid_argument("Rng::ball_vector: radius must be nonnegative");
  const Vec dir = unit_vector(d);
  const double r = radius * std::pow(uniform01(), 1.0 / d);
  return r * dir;
}

Mat Rng::orthogonal(int d) {
  if (d < 1) throw std::invalid_argument("Rng::orthogonal: dimension must be positive");
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gauss();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column signs so the result does not depend on QR conventions.
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace conelift

#include "conelift/cone.hpp"

#include <cmath>

namespace conelift {

int ConePoint::n() const {
  const int len = static_cast<int>(coords.size());
  return k == 0 ? len - 1 : len - 2;
}

namespace {

void require_shape(const ConePoint& p, const char* who) {
  if (p.k != 0 && p.k != 1 && p.k != -1)
    throw std::invalid_argument(std::string(who) + ": cone tag must be 0, +1 or -1");
  const int min_len = p.k == 0 ? 2 : 3;
  if (p.coords.size() < min_len)
    throw std::invalid_argument(std::string(who) + ": coordinate vector too short for tag");
}

}  // namespace

ConeCheck cone_contains(const ConePoint& p, double tol) {
  require_shape(p, "cone_contains");
  ConeCheck c;
  const Vec& x = p.coords;
  const Index len = x.size();
  if (p.k == 0) {
    // -t^2 + |x|^2 = 0, t > 0
    c.quadric_residual = std::abs(-x[0] * x[0] + x.tail(len - 1).squaredNorm());
    c.slice_residual = 0.0;
    c.future = x[0] > 0.0;
  } else if (p.k == 1) {
    // de Sitter quadric -t^2 + |x|^2 + x_{n+1}^2 = 1 on the slice x_{n+1} = 1
    c.quadric_residual = std::abs(-x[0] * x[0] + x.tail(len - 1).squaredNorm() - 1.0);
    c.slice_residual = std::abs(x[len - 1] - 1.0);
    c.future = x[0] > 0.0;
  } else {
    // anti-de Sitter quadric -t1^2 - t2^2 + |x|^2 = -1 on the slice t1 = 1
    c.quadric_residual =
        std::abs(-x[0] * x[0] - x[1] * x[1] + x.tail(len - 2).squaredNorm() + 1.0);
    c.slice_residual = std::abs(x[0] - 1.0);
    c.future = x[1] > 0.0;
  }
  c.pass = c.future && c.quadric_residual <= tol && c.slice_residual <= tol;
  return c;
}

namespace {

ConePoint to_k0(const ConePoint& p) {
  require_shape(p, "cone_convert");
  if (p.k == 0) return p;
  const Index len = p.coords.size();
  ConePoint out;
  out.k = 0;
  if (p.k == 1) {
    if (std::abs(p.coords[len - 1] - 1.0) > 1e-9)
      throw std::invalid_argument("cone_convert: point is off the x_{n+1} = 1 slice");
    out.coords = p.coords.head(len - 1);
  } else {
    if (std::abs(p.coords[0] - 1.0) > 1e-9)
      throw std::invalid_argument("cone_convert: point is off the t_1 = 1 slice");
    out.coords = p.coords.tail(len - 1);
  }
  return out;
}

ConePoint from_k0(const ConePoint& p, int k_to) {
  if (k_to == 0) return p;
  const Index len = p.coords.size();
  ConePoint out;
  out.k = k_to;
  out.coords.resize(len + 1);
  if (k_to == 1) {
    out.coords.head(len) = p.coords;
    out.coords[len] = 1.0;
  } else {
    out.coords[0] = 1.0;
    out.coords.tail(len) = p.coords;
  }
  return out;
}

}  // namespace

ConePoint cone_convert(const ConePoint& p, int k_to) {
  if (k_to != 0 && k_to != 1 && k_to != -1)
    throw std::invalid_argument("cone_convert: target tag must be 0, +1 or -1");
  if (k_to == p.k) return p;
  return from_k0(to_k0(p), k_to);
}

Vec cone_project(const ConePoint& p) {
  const ConePoint q = p.k == 0 ? p : to_k0(p);
  const Index len = q.coords.size();
  const double t = q.coords[0];
  if (t <= 0.0) throw std::invalid_argument("cone_project: time component must be positive");
  return q.coords.tail(len - 1) / t;
}

ConePoint cone_from_sphere(double t, const Vec& z, int k) {
  if (t <= 0.0) throw std::invalid_argument("cone_from_sphere: height must be positive");
  if (z.size() < 1) throw std::invalid_argument("cone_from_sphere: empty direction");
  ConePoint p;
  p.k = 0;
  p.coords.resize(z.size() + 1);
  p.coords[0] = t;
  p.coords.tail(z.size()) = t * z;
  return k == 0 ? p : from_k0(p, k);
}

}  // namespace conelift

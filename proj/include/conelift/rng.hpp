#pragma once

#include <cstdint>
#include <random>

#include "conelift/common.hpp"

namespace conelift {

/// Deterministic random source. Draws go through the raw mt19937_64
/// stream only, so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next_u64() { return gen_(); }

  /// Integer in [0, m).
  int below(int m) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(m)); }

  /// Standard normal via Box-Muller.
  double gauss();

  /// Uniform point on S^{d-1}.
  Vec unit_vector(int d);

  /// Uniform point in the closed ball of the given radius.
  Vec ball_vector(int d, double radius);

  /// Orthogonal d x d matrix from QR of a Gaussian matrix, sign-fixed columns.
  Mat orthogonal(int d);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace conelift

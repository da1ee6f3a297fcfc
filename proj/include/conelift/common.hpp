#pragma once

#include <Eigen/Dense>
#include <string>

namespace conelift {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Default validation tolerance for group-membership and point residuals.
inline constexpr double kDefaultTol = 1e-9;

/// Default tolerance for second-order finite-difference checks (grid scale N=512).
inline constexpr double kDefaultFdTol = 1e-3;

/// Verdict of an estimation run.
enum class FitStatus { unique, inconsistent, underdetermined };

inline const char* to_string(FitStatus s) {
  switch (s) {
    case FitStatus::unique: return "unique";
    case FitStatus::inconsistent: return "inconsistent";
    case FitStatus::underdetermined: return "underdetermined";
  }
  return "unknown";
}

}  // namespace conelift

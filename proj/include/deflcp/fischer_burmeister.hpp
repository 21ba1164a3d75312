// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
#ifndef DEFLCP_FISCHER_BURMEISTER_HPP
#define DEFLCP_FISCHER_BURMEISTER_HPP

#include <cmath>
#include <utility>

namespace deflcp {

/// Fischer-Burmeister NCP function: phi(a, b) = sqrt(a^2 + b^2) - a - b.
/// Vanishes exactly on {a >= 0, b >= 0, ab = 0}.
inline double fb(double a, double b) {
  return std::hypot(a, b) - a - b;
}

/// One element of the generalized gradient of fb. Differentiable everywhere
/// except the origin; at the kink we pick the fixed direction (1,1)/sqrt(2),
/// which keeps the solver deterministic.
inline std::pair<double, double> fb_subgradient(double a, double b) {
  const double norm = std::hypot(a, b);
  if (norm == 0.0) {
    const double g = std::sqrt(0.5) - 1.0;
    return {g, g};
  }
  return {a / norm - 1.0, b / norm - 1.0};
}

}  // namespace deflcp

#endif  // DEFLCP_FISCHER_BURMEISTER_HPP

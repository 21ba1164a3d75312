// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
#ifndef DEFLCP_RESIDUAL_HPP
#define DEFLCP_RESIDUAL_HPP

#include <cmath>

#include "deflcp/fischer_burmeister.hpp"
#include "deflcp/types.hpp"

namespace deflcp {

inline Vector eval_residual(const Problem& problem, const Vector& z) {
  Vector f = problem.residual(z);
  if (f.size() != problem.n)
    throw EvaluationError("residual returned wrong dimension");
  return f;
}

/// Forward-difference Jacobian of an arbitrary map, with steps kept inside
/// [l, u]: if z_i + h_i leaves the box the column switches to a backward step.
inline Matrix fd_jacobian(const ResidualFn& fn, const Vector& z,
                          const Vector& lower, const Vector& upper,
                          double fd_step) {
  const Eigen::Index n = z.size();
  const Vector f0 = fn(z);
  Matrix J(f0.size(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double h = fd_step * std::max(1.0, std::abs(z[i]));
    if (z[i] + h > upper[i]) h = -h;
    if (z[i] + h < lower[i])
      throw EvaluationError("finite-difference step leaves the feasible box");
    Vector zp = z;
    zp[i] += h;
    J.col(i) = (fn(zp) - f0) / h;
  }
  return J;
}

inline Matrix fd_jacobian(const ResidualFn& fn, const Vector& z,
                          double fd_step) {
  const Eigen::Index n = z.size();
  return fd_jacobian(fn, z, Vector::Constant(n, -kInf),
                     Vector::Constant(n, kInf), fd_step);
}

/// F'(z): analytic when the problem provides it, forward differences otherwise.
inline Matrix problem_jacobian(const Problem& problem, const Vector& z,
                               double fd_step) {
  if (problem.has_jacobian()) return problem.jacobian(z);
  return fd_jacobian(problem.residual, z, problem.lower, problem.upper,
                     fd_step);
}

/// NCP residual Psi(z), component i = fb(z_i, F_i(z)).
inline Vector ncp_residual(const Problem& problem, const Vector& z) {
  const Vector f = eval_residual(problem, z);
  Vector psi(problem.n);
  for (Eigen::Index i = 0; i < problem.n; ++i) psi[i] = fb(z[i], f[i]);
  return psi;
}

/// One element of the generalized Jacobian of the NCP residual:
/// row i = da_i e_i^T + db_i F'(z) row i with (da_i, db_i) the
/// Fischer-Burmeister subgradient at (z_i, F_i(z)).
inline Matrix ncp_jacobian_element(const Problem& problem, const Vector& z,
                                   double fd_step) {
  const Vector f = eval_residual(problem, z);
  const Matrix fprime = problem_jacobian(problem, z, fd_step);
  Matrix J = Matrix::Zero(problem.n, problem.n);
  for (Eigen::Index i = 0; i < problem.n; ++i) {
    const auto [da, db] = fb_subgradient(z[i], f[i]);
    J.row(i) = db * fprime.row(i);
    J(i, i) += da;
  }
  return J;
}

/// MCP residual over the index-set partition:
///   i in J_l :  phi(z_i - l_i, F_i)
///   i in J_u : -phi(u_i - z_i, -F_i)
///   i in J_lu:  phi(z_i - l_i, phi(u_i - z_i, -F_i))
///   i in J_f : -F_i
inline Vector mcp_residual(const Problem& problem, const Vector& z) {
  const Vector f = eval_residual(problem, z);
  const IndexSets sets = classify_bounds(problem.lower, problem.upper);
  Vector psi(problem.n);
  for (Eigen::Index i : sets.lower_only)
    psi[i] = fb(z[i] - problem.lower[i], f[i]);
  for (Eigen::Index i : sets.upper_only)
    psi[i] = -fb(problem.upper[i] - z[i], -f[i]);
  for (Eigen::Index i : sets.both)
    psi[i] = fb(z[i] - problem.lower[i], fb(problem.upper[i] - z[i], -f[i]));
  for (Eigen::Index i : sets.free) psi[i] = -f[i];
  return psi;
}

}  // namespace deflcp

#endif  // DEFLCP_RESIDUAL_HPP

// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
#ifndef DEFLCP_SOLVER_HPP
#define DEFLCP_SOLVER_HPP

#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "deflcp/types.hpp"

namespace deflcp {

/// Current iterate of the damped Newton method, with the cached merit value
/// theta = 0.5 * ||psi||^2.
struct MeritState {
  Vector z;
  Vector psi;
  double theta = 0.0;
  int iteration = 0;
};

inline Vector project_box(const Vector& v, const Vector& lower,
                          const Vector& upper) {
  return v.cwiseMax(lower).cwiseMin(upper);
}

namespace detail {

// Residual evaluation that converts exceptions and non-finite values into
// "no value"; the linesearch treats such trial points as rejected.
inline std::optional<Vector> try_residual(const ResidualFn& fn,
                                          const Vector& z) {
  try {
    Vector psi = fn(z);
    if (!psi.allFinite()) return std::nullopt;
    return psi;
  } catch (const EvaluationError&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Solve J d = -psi by dense LU with partial pivoting. A near-singular
/// factorization (pivot below 1e-12 * ||J||_inf) is retried with Levenberg
/// regularization J + lambda I, lambda in {1e-8, 1e-6, 1e-4}; if every
/// attempt fails the steepest-descent direction -J^T psi is returned.
inline Vector newton_step(const Matrix& J, const Vector& psi) {
  const double scale = J.cwiseAbs().rowwise().sum().maxCoeff();
  if (scale == 0.0) return Vector::Zero(psi.size());
  const double pivot_tol = 1e-12 * scale;
  constexpr double lambdas[] = {0.0, 1e-8, 1e-6, 1e-4};
  for (double lambda : lambdas) {
    Matrix A = J;
    if (lambda > 0.0) A.diagonal().array() += lambda;
    Eigen::PartialPivLU<Matrix> lu(A);
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() <= pivot_tol) continue;
    Vector d = lu.solve(-psi);
    if (d.allFinite()) return d;
  }
  return -J.transpose() * psi;
}

struct LinesearchResult {
  Vector z;
  Vector psi;
  double theta = 0.0;
  double step = 0.0;
};

/// Backtracking linesearch on the projected path z(t) = P(z + t d): accept
/// the largest t in {1, beta, beta^2, ...} >= min_step with
/// theta(z(t)) <= (1 - 2 sigma t) theta(z).
inline std::optional<LinesearchResult> projected_linesearch(
    const ResidualFn& residual_fn, const MeritState& state, const Vector& d,
    const Vector& lower, const Vector& upper, const SolverConfig& config) {
  for (double t = 1.0; t >= config.min_step; t *= config.beta) {
    Vector z_new = project_box(state.z + t * d, lower, upper);
    if (z_new == state.z) continue;
    auto psi_new = detail::try_residual(residual_fn, z_new);
    if (!psi_new) continue;
    const double theta_new = 0.5 * psi_new->squaredNorm();
    if (theta_new <= (1.0 - 2.0 * config.sigma * t) * state.theta)
      return LinesearchResult{std::move(z_new), std::move(*psi_new), theta_new,
                              t};
  }
  return std::nullopt;
}

/// Projected Armijo linesearch: accept the largest t with
/// theta(z(t)) <= theta(z) + sigma * g(t), where g(t) is the inner product of
/// the merit gradient J^T psi with the projected displacement z(t) - z.
inline std::optional<LinesearchResult> projected_armijo_linesearch(
    const ResidualFn& residual_fn, const MeritState& state, const Vector& d,
    const Vector& merit_grad, const Vector& lower, const Vector& upper,
    const SolverConfig& config) {
  for (double t = 1.0; t >= config.min_step; t *= config.beta) {
    Vector z_new = project_box(state.z + t * d, lower, upper);
    if (z_new == state.z) continue;
    const double g = merit_grad.dot(z_new - state.z);
    if (g >= 0.0) continue;  // projected direction is not descent at this t
    auto psi_new = detail::try_residual(residual_fn, z_new);
    if (!psi_new) continue;
    const double theta_new = 0.5 * psi_new->squaredNorm();
    if (theta_new <= state.theta + config.sigma * g)
      return LinesearchResult{std::move(z_new), std::move(*psi_new), theta_new,
                              t};
  }
  return std::nullopt;
}

/// Damped semismooth Newton method on an arbitrary (possibly deflated)
/// residual, kept feasible by projecting every trial point onto [l, u].
inline SolveOutcome semismooth_newton(const ResidualFn& residual_fn,
                                      const JacobianFn& jacobian_fn,
                                      const Vector& z0, const Vector& lower,
                                      const Vector& upper,
                                      const SolverConfig& config) {
  SolveOutcome out;
  out.z = project_box(z0, lower, upper);

  auto psi0 = detail::try_residual(residual_fn, out.z);
  if (!psi0) {
    out.status = SolveStatus::Diverged;
    return out;
  }

  MeritState state{out.z, std::move(*psi0), 0.0, 0};
  state.theta = 0.5 * state.psi.squaredNorm();

  while (true) {
    out.z = state.z;
    out.residual_norm = state.psi.norm();
    out.iterations = state.iteration;
    if (out.residual_norm <= config.tol) {
      out.status = SolveStatus::Converged;
      return out;
    }
    if (state.iteration >= config.max_iter) {
      out.status = SolveStatus::MaxIterations;
      return out;
    }

    Matrix J;
    try {
      J = jacobian_fn(state.z);
    } catch (const EvaluationError&) {
      out.status = SolveStatus::Diverged;
      return out;
    }
    if (!J.allFinite()) {
      out.status = SolveStatus::LinearSolveFailure;
      return out;
    }

    const Vector d = newton_step(J, state.psi);
    if (d.norm() == 0.0) {
      out.status = SolveStatus::LinesearchFailure;
      return out;
    }

    const Vector merit_grad = J.transpose() * state.psi;
    auto search = [&](const Vector& dir) {
      if (config.linesearch == Linesearch::ProjectedArmijo)
        return projected_armijo_linesearch(residual_fn, state, dir, merit_grad,
                                           lower, upper, config);
      return projected_linesearch(residual_fn, state, dir, lower, upper,
                                  config);
    };

    // Newton direction first; steepest descent on the merit as a safeguard
    // when no damped Newton step is acceptable.
    std::optional<LinesearchResult> ls = search(d);
    if (!ls && merit_grad.norm() > 0.0) ls = search(-merit_grad);
    if (!ls) {
      out.status = SolveStatus::LinesearchFailure;
      return out;
    }

    state.z = std::move(ls->z);
    state.psi = std::move(ls->psi);
    state.theta = ls->theta;
    ++state.iteration;
  }
}

}  // namespace deflcp

#endif  // DEFLCP_SOLVER_HPP

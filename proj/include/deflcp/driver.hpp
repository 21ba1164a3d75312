// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
#ifndef DEFLCP_DRIVER_HPP
#define DEFLCP_DRIVER_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "deflcp/deflation.hpp"
#include "deflcp/residual.hpp"
#include "deflcp/solver.hpp"
#include "deflcp/types.hpp"

namespace deflcp {

/// Direct check of the raw complementarity conditions 0 <= z _|_ F(z) >= 0,
/// independent of the Fischer-Burmeister reformulation.
inline bool check_solution(const Problem& problem, const Vector& z,
                           double tol) {
  Vector f;
  try {
    f = eval_residual(problem, z);
  } catch (const EvaluationError&) {
    return false;
  }
  if (!f.allFinite()) return false;
  return z.minCoeff() >= -tol && f.minCoeff() >= -tol &&
         (z.array() * f.array()).abs().maxCoeff() <= tol;
}

struct DeflationParams {
  double power = 1.0;
  double shift = 1.0;
  double radius = 1e-6;
};

enum class StopReason {
  MaxSolutions,     // requested number of solutions reached
  SolverFailure,    // inner solve did not converge
  DuplicateRoot     // converged to a point within 10*delta of a known root
};

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxSolutions: return "max-solutions";
    case StopReason::SolverFailure: return "solver-failure";
    case StopReason::DuplicateRoot: return "duplicate-root";
  }
  return "unknown";
}

struct EnumerationResult {
  SolutionSet solutions;
  StopReason stop_reason = StopReason::SolverFailure;
  SolveStatus last_status = SolveStatus::Diverged;
};

namespace detail {

// The weak operator G is required when F vanishes at the deflated root,
// since there the position deflation H alone cannot keep the residual
// bounded away from zero. When F(r) != 0 the plain residual already
// satisfies the deflation requirements, so G is skipped by default and
// only enabled later if the solver demonstrably needs it (see the ring
// escalation below). For pre-deflated points where F is not evaluable
// only H acts.
inline bool wants_weak_deflation(const Problem& problem, const Vector& r) {
  try {
    const Vector f = eval_residual(problem, r);
    if (!f.allFinite()) return false;
    return f.lpNorm<Eigen::Infinity>() <= 1e-8;
  } catch (const EvaluationError&) {
    return false;
  }
}

// If an iterate ends up within the given distance of a deflated root that
// does not yet carry the weak operator, enable it there. Returns true when
// a flag was flipped. This handles roots with F(r) != 0 that still attract
// the deflated iteration along a complementarity face: the position
// deflation leaves a residual funnel that stalls at the bump boundary, and
// applying G removes it. Each flag flips at most once, so retries are
// bounded by the number of deflated roots.
inline bool escalate_weak_flags(DeflationState& state, const Vector& z,
                                double tol) {
  bool flipped = false;
  for (std::size_t i = 0; i < state.roots.size(); ++i) {
    if (state.weak_flags[i]) continue;
    if ((z - state.roots[i]).norm() <= tol) {
      state.weak_flags[i] = true;
      flipped = true;
    }
  }
  return flipped;
}

}  // namespace detail

/// Deflation loop: solve, record the root, deflate it, restart from the very
/// same initial guess. Stops on a duplicate root, on solver failure, or once
/// max_solutions roots are found (in that priority order). A failure or
/// duplicate that lands next to a deflated root without the weak operator
/// first escalates that root to weak deflation and retries.
inline EnumerationResult enumerate_solutions(
    const Problem& problem, const Vector& z0, const DeflationParams& params,
    const SolverConfig& config, int max_solutions,
    const std::vector<Vector>& pre_deflate = {}) {
  if (max_solutions < 1)
    throw std::invalid_argument("max_solutions must be at least 1");
  if (!problem.feasible(z0))
    throw InvalidProblem("initial guess is infeasible");

  DeflationState state;
  state.power = params.power;
  state.shift = params.shift;
  state.radius = params.radius;
  for (const Vector& point : pre_deflate)
    state.add_root(point, detail::wants_weak_deflation(problem, point));

  const double duplicate_tol = 10.0 * params.radius;
  EnumerationResult result;

  while (true) {
    ResidualFn residual_fn;
    JacobianFn jacobian_fn;
    if (state.empty() && problem.is_ncp() && problem.has_jacobian()) {
      residual_fn = [&](const Vector& z) { return ncp_residual(problem, z); };
      jacobian_fn = [&](const Vector& z) {
        return ncp_jacobian_element(problem, z, config.fd_step);
      };
    } else {
      residual_fn = [&](const Vector& z) {
        return deflated_residual(problem, state, z);
      };
      jacobian_fn = [&](const Vector& z) {
        return deflated_jacobian(problem, state, z, config.fd_step);
      };
    }

    const SolveOutcome outcome = semismooth_newton(
        residual_fn, jacobian_fn, z0, problem.lower, problem.upper, config);
    result.last_status = outcome.status;
    if (outcome.status != SolveStatus::Converged) {
      if (detail::escalate_weak_flags(state, outcome.z, duplicate_tol))
        continue;
      result.stop_reason = StopReason::SolverFailure;
      return result;
    }

    bool duplicate = false;
    for (const Vector& r : state.roots)
      if ((outcome.z - r).norm() <= duplicate_tol) duplicate = true;
    if (duplicate) {
      if (detail::escalate_weak_flags(state, outcome.z, duplicate_tol))
        continue;
      result.stop_reason = StopReason::DuplicateRoot;
      return result;
    }

    result.solutions.entries.push_back(
        {outcome.z, eval_residual(problem, outcome.z), outcome.iterations});
    state.add_root(outcome.z, detail::wants_weak_deflation(problem, outcome.z));

    if (static_cast<int>(result.solutions.size()) >= max_solutions) {
      result.stop_reason = StopReason::MaxSolutions;
      return result;
    }
  }
}

}  // namespace deflcp

#endif  // DEFLCP_DRIVER_HPP

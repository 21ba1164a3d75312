// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
#ifndef DEFLCP_DEFLATION_HPP
#define DEFLCP_DEFLATION_HPP

#include <cmath>

#include "deflcp/fischer_burmeister.hpp"
#include "deflcp/residual.hpp"
#include "deflcp/types.hpp"

namespace deflcp {

/// Compactly supported C-infinity bump: exp(1 + delta/(t - delta)) for
/// t < delta, 0 otherwise, where t = ||v||. chi(0) = 1.
inline double chi_from_norm(double norm, double delta) {
  if (norm >= delta) return 0.0;
  return std::exp(1.0 + delta / (norm - delta));
}

inline double chi(const Vector& v, double delta) {
  return chi_from_norm(v.norm(), delta);
}

/// Complementarity deflation operator applied to the position vector:
/// H_j(z; r) = (z_j + chi(z - r)) / ||z - r||^p. Every component is bounded
/// away from zero as z -> r, which is what the plain norm scaling lacks.
inline Vector deflate_position(const Vector& z, const Vector& r, double p,
                               double delta) {
  const double dist = (z - r).norm();
  if (dist == 0.0)
    throw EvaluationError("deflation operator evaluated at its own root");
  const double bump = chi_from_norm(dist, delta);
  return (z.array() + bump) / std::pow(dist, p);
}

/// Weak operator on the problem residual: G(F, z; r) = F(z) / ||z - r||^p.
/// Sign-preserving; any shift is added globally by compose_deflation.
inline Vector deflate_residual_weak(const Vector& f_val, const Vector& z,
                                    const Vector& r, double p) {
  const double dist = (z - r).norm();
  if (dist == 0.0)
    throw EvaluationError("deflation operator evaluated at its own root");
  return f_val / std::pow(dist, p);
}

/// The two arguments handed to the NCP operator after deflation:
/// position = H-composition of z plus the shift, residual = G-composition of
/// F(z) plus the shift.
struct DeflatedArguments {
  Vector position;
  Vector residual;
};

namespace detail {

// Per-root scalings shared by the position transforms z - l and u - z:
// both reduce to the same ||z - r|| and chi(z - r).
struct RootFactor {
  double inv_norm_p;
  double bump;
};

inline std::vector<RootFactor> root_factors(const DeflationState& state,
                                            const Vector& z) {
  std::vector<RootFactor> factors;
  factors.reserve(state.size());
  for (const Vector& r : state.roots) {
    const double dist = (z - r).norm();
    if (dist == 0.0)
      throw EvaluationError("deflated residual evaluated at a deflated root");
    factors.push_back({1.0 / std::pow(dist, state.power),
                       chi_from_norm(dist, state.radius)});
  }
  return factors;
}

// Composition with respect to the first argument across all roots, applied
// to the position vector w0, then shifted: hat(H)(w0) + alpha * w0.
inline Vector compose_position(const Vector& w0,
                               const std::vector<RootFactor>& factors,
                               double alpha) {
  Vector w = w0;
  for (const RootFactor& f : factors)
    w = (w.array() + f.bump) * f.inv_norm_p;
  if (!factors.empty()) w += alpha * w0;
  return w;
}

// G-composition over the roots flagged for weak deflation. The shift is
// added only when G actually acted; otherwise the residual stays F(z).
inline Vector compose_residual(const Vector& f0,
                               const std::vector<RootFactor>& factors,
                               const std::vector<bool>& weak_flags,
                               double alpha) {
  Vector g = f0;
  bool any_weak = false;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!weak_flags[i]) continue;
    g *= factors[i].inv_norm_p;
    any_weak = true;
  }
  if (any_weak) g += alpha * f0;
  return g;
}

}  // namespace detail

/// Deflated arguments for the NCP case. With an empty root list this is the
/// identity: position = z, residual = F(z).
inline DeflatedArguments compose_deflation(const Problem& problem,
                                           const DeflationState& state,
                                           const Vector& z) {
  const Vector f = eval_residual(problem, z);
  const auto factors = detail::root_factors(state, z);
  return {detail::compose_position(z, factors, state.shift),
          detail::compose_residual(f, factors, state.weak_flags, state.shift)};
}

/// Deflated NCP residual: component i = fb(position_i, residual_i).
inline Vector deflated_ncp_residual(const Problem& problem,
                                    const DeflationState& state,
                                    const Vector& z) {
  const DeflatedArguments args = compose_deflation(problem, state, z);
  Vector psi(problem.n);
  for (Eigen::Index i = 0; i < problem.n; ++i)
    psi[i] = fb(args.position[i], args.residual[i]);
  return psi;
}

/// Deflated MCP residual: the four-case formula with H acting on z - l and
/// u - z (their deflation distances both reduce to ||z - r||).
inline Vector deflated_mcp_residual(const Problem& problem,
                                    const DeflationState& state,
                                    const Vector& z) {
  const Vector f = eval_residual(problem, z);
  const auto factors = detail::root_factors(state, z);
  const Vector g =
      detail::compose_residual(f, factors, state.weak_flags, state.shift);
  const IndexSets sets = classify_bounds(problem.lower, problem.upper);

  Vector psi(problem.n);
  Vector pos_l, pos_u;
  if (!sets.lower_only.empty() || !sets.both.empty()) {
    Vector w(problem.n);
    for (Eigen::Index i = 0; i < problem.n; ++i)
      w[i] = std::isfinite(problem.lower[i]) ? z[i] - problem.lower[i] : 0.0;
    pos_l = detail::compose_position(w, factors, state.shift);
  }
  if (!sets.upper_only.empty() || !sets.both.empty()) {
    Vector w(problem.n);
    for (Eigen::Index i = 0; i < problem.n; ++i)
      w[i] = std::isfinite(problem.upper[i]) ? problem.upper[i] - z[i] : 0.0;
    pos_u = detail::compose_position(w, factors, state.shift);
  }

  for (Eigen::Index i : sets.lower_only) psi[i] = fb(pos_l[i], g[i]);
  for (Eigen::Index i : sets.upper_only) psi[i] = -fb(pos_u[i], -g[i]);
  for (Eigen::Index i : sets.both)
    psi[i] = fb(pos_l[i], fb(pos_u[i], -g[i]));
  for (Eigen::Index i : sets.free) psi[i] = -g[i];
  return psi;
}

/// Deflated residual for any bound structure; reduces to the NCP form when
/// l = 0, u = +inf.
inline Vector deflated_residual(const Problem& problem,
                                const DeflationState& state, const Vector& z) {
  if (problem.is_ncp()) return deflated_ncp_residual(problem, state, z);
  return deflated_mcp_residual(problem, state, z);
}

/// Jacobian of the deflated residual by forward differences. The analytic
/// chain rule through chi and the compositions is deliberately avoided; the
/// semismooth Newton method tolerates the truncation error.
inline Matrix deflated_jacobian(const Problem& problem,
                                const DeflationState& state, const Vector& z,
                                double fd_step) {
  auto fn = [&](const Vector& x) { return deflated_residual(problem, state, x); };
  return fd_jacobian(fn, z, problem.lower, problem.upper, fd_step);
}

}  // namespace deflcp

#endif  // DEFLCP_DEFLATION_HPP

// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
#ifndef DEFLCP_TYPES_HPP
#define DEFLCP_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace deflcp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when a Problem violates its bound contract (e.g. l_i > u_i).
class InvalidProblem : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a residual or deflation operator is evaluated where it is
/// undefined (at a deflated root, or when F produces non-finite values).
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

/// A mixed complementarity problem MCP(F, l, u): find z with l <= z <= u such
/// that each component of F(z) satisfies the sign condition dictated by which
/// bound (if any) is active. The NCP special case is l = 0, u = +inf.
struct Problem {
  Eigen::Index n = 0;
  ResidualFn residual;
  JacobianFn jacobian;  // optional analytic F'
  Vector lower;
  Vector upper;

  Problem() = default;

  Problem(Eigen::Index dim, ResidualFn F, JacobianFn Fprime, Vector l, Vector u)
      : n(dim),
        residual(std::move(F)),
        jacobian(std::move(Fprime)),
        lower(std::move(l)),
        upper(std::move(u)) {
    if (lower.size() != n || upper.size() != n)
      throw InvalidProblem("bound vectors must have length n");
    for (Eigen::Index i = 0; i < n; ++i)
      if (!(lower[i] <= upper[i]))
        throw InvalidProblem("lower bound exceeds upper bound at index " +
                             std::to_string(i));
  }

  /// NCP(F): bounds l = 0, u = +inf.
  static Problem ncp(Eigen::Index dim, ResidualFn F, JacobianFn Fprime = {}) {
    return Problem(dim, std::move(F), std::move(Fprime),
                   Vector::Zero(dim), Vector::Constant(dim, kInf));
  }

  bool has_jacobian() const { return static_cast<bool>(jacobian); }

  bool is_ncp() const {
    return (lower.array() == 0.0).all() && (upper.array() == kInf).all();
  }

  bool feasible(const Vector& z, double tol = 0.0) const {
    return (z.array() >= lower.array() - tol).all() &&
           (z.array() <= upper.array() + tol).all();
  }
};

/// Partition of {0..n-1} by finiteness of the bounds.
struct IndexSets {
  std::vector<Eigen::Index> lower_only;   // finite l, infinite u
  std::vector<Eigen::Index> upper_only;   // infinite l, finite u
  std::vector<Eigen::Index> both;         // finite l and u
  std::vector<Eigen::Index> free;         // no bounds
};

inline IndexSets classify_bounds(const Vector& l, const Vector& u) {
  if (l.size() != u.size())
    throw InvalidProblem("bound vectors must have equal length");
  IndexSets sets;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (!(l[i] <= u[i]))
      throw InvalidProblem("lower bound exceeds upper bound at index " +
                           std::to_string(i));
    const bool lf = std::isfinite(l[i]);
    const bool uf = std::isfinite(u[i]);
    if (lf && uf)
      sets.both.push_back(i);
    else if (lf)
      sets.lower_only.push_back(i);
    else if (uf)
      sets.upper_only.push_back(i);
    else
      sets.free.push_back(i);
  }
  return sets;
}

/// Roots removed from consideration, plus the deflation parameters.
/// weak_flags[i] records whether the weak operator G acts on F for root i
/// (only needed when F(r^i) = 0; see compose_deflation).
struct DeflationState {
  std::vector<Vector> roots;
  std::vector<bool> weak_flags;
  double power = 1.0;
  double shift = 1.0;
  double radius = 1e-6;  // support radius delta of the bump function

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }

  void add_root(Vector r, bool apply_weak) {
    roots.push_back(std::move(r));
    weak_flags.push_back(apply_weak);
  }
};

enum class Linesearch { ProjectedSun, ProjectedArmijo };

struct SolverConfig {
  double tol = 1e-10;         // l2 residual tolerance
  int max_iter = 200;
  Linesearch linesearch = Linesearch::ProjectedSun;
  double fd_step = std::sqrt(std::numeric_limits<double>::epsilon());
  double sigma = 1e-4;        // sufficient-decrease constant, in (0, 1/2)
  double beta = 0.5;          // step contraction, in (0, 1)
  double min_step = 1e-12;
};

enum class SolveStatus {
  Converged,
  MaxIterations,
  LinesearchFailure,
  LinearSolveFailure,
  Diverged
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iter";
    case SolveStatus::LinesearchFailure: return "linesearch-failure";
    case SolveStatus::LinearSolveFailure: return "linear-solve-failure";
    case SolveStatus::Diverged: return "diverged";
  }
  return "unknown";
}

struct SolveOutcome {
  SolveStatus status = SolveStatus::Diverged;
  Vector z;
  double residual_norm = kInf;
  int iterations = 0;
};

/// One distinct root found by the enumeration driver, with the undeflated
/// problem residual F(root) and the Newton iterations that produced it.
struct Solution {
  Vector root;
  Vector residual;
  int iterations = 0;
};

struct SolutionSet {
  std::vector<Solution> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

}  // namespace deflcp

#endif  // DEFLCP_TYPES_HPP

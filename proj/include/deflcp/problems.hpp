// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
#ifndef DEFLCP_PROBLEMS_HPP
#define DEFLCP_PROBLEMS_HPP

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "deflcp/driver.hpp"
#include "deflcp/types.hpp"

namespace deflcp {

/// The Walrasian-equilibrium problem has a one-parameter continuum of
/// solutions; which branch applies depends on the sign of gamma - 3/4.
struct MathiesenFamily {
  enum class Branch { GammaBelow, GammaAbove };
  double gamma = 1.0;
  Branch branch = Branch::GammaAbove;
};

/// True iff some lambda > 0 puts z within tol (max norm) of the branch
/// formula. lambda is recovered in closed form: 2 z_2 on the upper branch,
/// z_3 on the lower one.
inline bool family_membership(const Vector& z, const MathiesenFamily& family,
                              double tol) {
  if (z.size() != 4) return false;
  Vector model(4);
  double lambda = 0.0;
  if (family.branch == MathiesenFamily::Branch::GammaAbove) {
    lambda = 2.0 * z[1];
    model << 0.75, 0.5 * lambda, 0.5 * lambda, 0.0;
  } else {
    const double g = family.gamma;
    lambda = z[2];
    const double w = 3.0 * lambda * (1.0 - g) / g;
    model << g, w, lambda, w - lambda;
  }
  return lambda > 0.0 && (z - model).lpNorm<Eigen::Infinity>() <= tol;
}

/// A catalogue entry: the problem, the initial guess and deflation
/// parameters reported for it, and its known solutions (when finitely many).
/// Solutions are stored in the coordinate frame the solver works in; for
/// problems posed after a change of variables, frame_shift maps original
/// coordinates z to solver coordinates z + frame_shift.
struct BenchmarkSpec {
  std::string name;
  Problem problem;
  Vector z0;
  DeflationParams defl;
  Linesearch linesearch = Linesearch::ProjectedSun;
  int expected_solutions = 0;  // 0 means a continuum
  std::vector<Vector> known_solutions;
  std::vector<Vector> known_residuals;
  std::vector<Vector> pre_deflate;
  Vector frame_shift;  // empty when both frames coincide
  std::optional<MathiesenFamily> family;

  Vector to_solver_frame(const Vector& z) const {
    return frame_shift.size() ? Vector(z + frame_shift) : z;
  }
  Vector to_original_frame(const Vector& z) const {
    return frame_shift.size() ? Vector(z - frame_shift) : z;
  }
};

inline SolverConfig default_config(const BenchmarkSpec& spec) {
  SolverConfig config;
  config.linesearch = spec.linesearch;
  return config;
}

namespace bench_detail {

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace bench_detail

/// Kojima and Shindoh: 4-dimensional quadratic NCP with two solutions, one of
/// which has a degenerate component z_3 = F_3 = 0.
inline BenchmarkSpec kojima_shindoh() {
  auto F = [](const Vector& z) {
    Vector f(4);
    f[0] = 3 * z[0] * z[0] + 2 * z[0] * z[1] + 2 * z[1] * z[1] + z[2] +
           3 * z[3] - 6;
    f[1] = 2 * z[0] * z[0] + z[1] * z[1] + z[0] + 10 * z[2] + 2 * z[3] - 2;
    f[2] = 3 * z[0] * z[0] + z[0] * z[1] + 2 * z[1] * z[1] + 2 * z[2] +
           9 * z[3] - 9;
    f[3] = z[0] * z[0] + 3 * z[1] * z[1] + 2 * z[2] + 3 * z[3] - 3;
    return f;
  };
  auto J = [](const Vector& z) {
    Matrix j(4, 4);
    j << 6 * z[0] + 2 * z[1], 2 * z[0] + 4 * z[1], 1, 3,
         4 * z[0] + 1,        2 * z[1],            10, 2,
         6 * z[0] + z[1],     z[0] + 4 * z[1],     2, 9,
         2 * z[0],            6 * z[1],            2, 3;
    return j;
  };

  BenchmarkSpec spec;
  spec.name = "kojima";
  spec.problem = Problem::ncp(4, F, J);
  spec.z0 = Vector::Constant(4, 2.0);
  spec.defl = {1.0, 0.5, 1e-6};
  spec.expected_solutions = 2;
  const double s = std::sqrt(6.0) / 2.0;
  spec.known_solutions = {bench_detail::vec({1, 0, 3, 0}),
                          bench_detail::vec({s, 0, 0, 0.5})};
  spec.known_residuals = {bench_detail::vec({0, 31, 0, 4}),
                          bench_detail::vec({0, 2 + s, 0, 0})};
  return spec;
}

/// Aggarwal's bimatrix game: the Nash equilibria are the solutions of an NCP
/// built from the loss matrices; the completely mixed equilibrium is the one
/// the modified Lemke-Howson scheme misses.
inline BenchmarkSpec aggarwal() {
  static const Matrix A = (Matrix(2, 2) << 30, 20, 10, 25).finished();
  static const Matrix B = (Matrix(2, 2) << 30, 10, 20, 25).finished();
  auto F = [](const Vector& z) {
    Vector f(4);
    f.head(2) = A * z.tail(2) - Vector::Ones(2);
    f.tail(2) = B.transpose() * z.head(2) - Vector::Ones(2);
    return f;
  };
  auto J = [](const Vector&) {
    Matrix j = Matrix::Zero(4, 4);
    j.topRightCorner(2, 2) = A;
    j.bottomLeftCorner(2, 2) = B.transpose();
    return j;
  };

  BenchmarkSpec spec;
  spec.name = "aggarwal";
  spec.problem = Problem::ncp(4, F, J);
  spec.z0 = bench_detail::vec({0, 0, 0, 1.0 / 30});
  spec.defl = {1.0, 1.0, 1e-6};
  spec.expected_solutions = 3;
  spec.known_solutions = {
      bench_detail::vec({0, 1.0 / 20, 1.0 / 10, 0}),
      bench_detail::vec({1.0 / 110, 4.0 / 110, 1.0 / 110, 4.0 / 110}),
      bench_detail::vec({1.0 / 10, 0, 0, 1.0 / 20})};
  spec.known_residuals = {bench_detail::vec({2, 0, 0, 0.25}),
                          bench_detail::vec({0, 0, 0, 0}),
                          bench_detail::vec({0, 0.25, 2, 0})};
  return spec;
}

/// Konno and Kuno: KKT system of a linear multiplicative program, posed as a
/// 9-dimensional NCP after shifting the two primal variables by +5.
inline BenchmarkSpec konno_kuno() {
  static const Matrix A = (Matrix(7, 2) <<
      -1.0 / 5, -2.0 / 5,
       7.0 / 25, -7.0 / 25,
       7.0 / 20, 7.0 / 20,
       14.0 / 25, 7.0 / 25,
       7.0 / 12, 0.0,
      -28.0 / 65, 7.0 / 65,
      -14.0 / 31, -7.0 / 31).finished();
  static const Vector b = bench_detail::vec(
      {6.0 / 5, 21.0 / 25, 7.0 / 10, 14.0 / 25, 7.0 / 12, 84.0 / 65,
       42.0 / 31});
  // f(x) = (x_1 + x_2)(x_1 - x_2), so grad f = [2 x_1, -2 x_2].
  auto F = [](const Vector& z) {
    const Vector x = z.head(2).array() - 5.0;
    const Vector lambda = z.tail(7);
    Vector f(9);
    f[0] = 2 * x[0];
    f[1] = -2 * x[1];
    f.head(2) += A.transpose() * lambda;
    f.tail(7) = b - A * x;
    return f;
  };
  auto J = [](const Vector&) {
    Matrix j = Matrix::Zero(9, 9);
    j(0, 0) = 2;
    j(1, 1) = -2;
    j.topRightCorner(2, 7) = A.transpose();
    j.bottomLeftCorner(7, 2) = -A;
    return j;
  };

  BenchmarkSpec spec;
  spec.name = "konno-kuno";
  spec.problem = Problem::ncp(9, F, J);
  spec.z0 = Vector::Zero(9);
  spec.z0[0] = 0.1;
  spec.z0[1] = 3.6;
  spec.defl = {1.0, 0.5, 1e-6};
  spec.expected_solutions = 3;
  spec.frame_shift = Vector::Zero(9);
  spec.frame_shift[0] = spec.frame_shift[1] = 5.0;

  const std::vector<Vector> originals = {
      Vector::Zero(9),
      bench_detail::vec({-2, 4, 0, 0, 144.0 / 7, 0, 0, 52.0 / 7, 0}),
      bench_detail::vec({0, -3, 10, 50.0 / 7, 0, 0, 0, 0, 0})};
  for (const Vector& z : originals)
    spec.known_solutions.push_back(spec.to_solver_frame(z));
  spec.known_residuals = {
      bench_detail::vec({0, 0, 6.0 / 5, 21.0 / 25, 7.0 / 10, 14.0 / 25,
                         7.0 / 12, 84.0 / 65, 42.0 / 31}),
      bench_detail::vec({0, 0, 12.0 / 5, 63.0 / 25, 0, 14.0 / 25, 7.0 / 4, 0,
                         42.0 / 31}),
      bench_detail::vec({0, 0, 0, 0, 7.0 / 4, 7.0 / 5, 7.0 / 12, 21.0 / 13,
                         21.0 / 31})};
  return spec;
}

/// Gould's indefinite quadratic program: the KKT system is an NCP whose
/// solutions are the two minima and the saddle point.
inline BenchmarkSpec gould() {
  auto F = [](const Vector& z) {
    Vector f(4);
    f[0] = -4 * (z[0] - 0.25) + 3 * z[2] + z[3];
    f[1] = 4 * (z[1] - 0.5) + z[2] + z[3];
    f[2] = 1.5 - 3 * z[0] - z[1];
    f[3] = 1.0 - z[0] - z[1];
    return f;
  };
  auto J = [](const Vector&) {
    Matrix j(4, 4);
    j << -4, 0, 3, 1,
          0, 4, 1, 1,
         -3, -1, 0, 0,
         -1, -1, 0, 0;
    return j;
  };

  BenchmarkSpec spec;
  spec.name = "gould";
  spec.problem = Problem::ncp(4, F, J);
  spec.z0 = Vector::Constant(4, 0.3);
  spec.defl = {2.0, 1.0, 1e-6};
  spec.expected_solutions = 3;
  spec.known_solutions = {
      bench_detail::vec({0, 0.5, 0, 0}),                        // global
      bench_detail::vec({0.25, 0.5, 0, 0}),                     // saddle
      bench_detail::vec({11.0 / 32, 15.0 / 32, 1.0 / 8, 0})};   // local
  spec.known_residuals = {bench_detail::vec({1, 0, 1, 0.5}),
                          bench_detail::vec({0, 0, 0.25, 0.25}),
                          bench_detail::vec({0, 0, 0, 3.0 / 16})};
  return spec;
}

/// Mathiesen's Walrasian equilibrium: a 4-dimensional NCP with a continuum of
/// solutions. F divides by z_2 and z_3, so the origin (where spurious
/// convergence would otherwise occur) is pre-deflated.
inline BenchmarkSpec mathiesen(double gamma = 1.0) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("mathiesen: gamma must be positive");
  auto F = [gamma](const Vector& z) {
    if (z[1] == 0.0 || z[2] == 0.0)
      throw EvaluationError("mathiesen residual: division by zero");
    Vector f(4);
    const double basket = z[2] + gamma * z[3];
    f[0] = -z[1] + z[2] + z[3];
    f[1] = z[0] - 0.75 * basket / z[1];
    f[2] = -z[0] - 0.25 * basket / z[2] + 1.0;
    f[3] = gamma - z[0];
    return f;
  };
  auto J = [gamma](const Vector& z) {
    if (z[1] == 0.0 || z[2] == 0.0)
      throw EvaluationError("mathiesen jacobian: division by zero");
    const double basket = z[2] + gamma * z[3];
    Matrix j(4, 4);
    j << 0, -1, 1, 1,
         1, 0.75 * basket / (z[1] * z[1]), -0.75 / z[1], -0.75 * gamma / z[1],
        -1, 0, 0.25 * gamma * z[3] / (z[2] * z[2]), -0.25 * gamma / z[2],
        -1, 0, 0, 0;
    return j;
  };

  BenchmarkSpec spec;
  spec.name = "mathiesen";
  spec.problem = Problem::ncp(4, F, J);
  spec.z0 = Vector::Constant(4, 15.0);
  spec.defl = {1.0, 1.0, 1e-8};
  spec.expected_solutions = 0;  // continuum
  spec.pre_deflate = {Vector::Zero(4)};
  spec.family = MathiesenFamily{
      gamma, gamma < 0.75 ? MathiesenFamily::Branch::GammaBelow
                          : MathiesenFamily::Branch::GammaAbove};
  return spec;
}

/// Parse a dense LCP F(z) = A z + b from whitespace-separated text:
/// n, then A row-major (n*n reals), then b (n reals).
inline Problem lcp_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("lcp_from_file: cannot open " + path);

  Eigen::Index n = 0;
  if (!(in >> n) || n <= 0)
    throw std::runtime_error("lcp_from_file: " + path +
                             ": expected a positive dimension as first token");

  Matrix A(n, n);
  Vector b(n);
  const auto want = [&](double& slot, const char* what, Eigen::Index idx) {
    if (!(in >> slot))
      throw std::runtime_error("lcp_from_file: " + path + ": truncated " +
                               what + " at entry " + std::to_string(idx));
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) want(A(i, j), "matrix", i * n + j);
  for (Eigen::Index i = 0; i < n; ++i) want(b[i], "vector", i);

  auto F = [A, b](const Vector& z) { return Vector(A * z + b); };
  auto J = [A](const Vector&) { return A; };
  return Problem::ncp(n, F, J);
}

/// Tin-Loi and Tseng's quasibrittle fracture LCP; the data file is external
/// (MCPLIB), so the caller supplies its path.
inline BenchmarkSpec tinloi(const std::string& path) {
  BenchmarkSpec spec;
  spec.name = "tinloi";
  spec.problem = lcp_from_file(path);
  spec.z0 = Vector::Constant(spec.problem.n, 0.4);
  spec.defl = {1.0, 1.0, 1e-6};
  spec.linesearch = Linesearch::ProjectedArmijo;
  spec.expected_solutions = 2;
  return spec;
}

inline std::vector<std::string> benchmark_names() {
  return {"kojima", "aggarwal", "konno-kuno", "gould", "tinloi", "mathiesen"};
}

/// Look up a benchmark by name. tinloi needs its data file; mathiesen takes
/// the gamma parameter.
inline BenchmarkSpec make_benchmark(const std::string& name,
                                    double gamma = 1.0,
                                    const std::string& lcp_path = "") {
  if (name == "kojima") return kojima_shindoh();
  if (name == "aggarwal") return aggarwal();
  if (name == "konno-kuno") return konno_kuno();
  if (name == "gould") return gould();
  if (name == "mathiesen") return mathiesen(gamma);
  if (name == "tinloi") {
    if (lcp_path.empty())
      throw std::invalid_argument("tinloi requires an LCP data file");
    return tinloi(lcp_path);
  }
  throw std::invalid_argument("unknown problem name: " + name);
}

}  // namespace deflcp

#endif  // DEFLCP_PROBLEMS_HPP

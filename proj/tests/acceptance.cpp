// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks for the deflated complementarity solver. Each criterion
// prints a single PASS/FAIL line (SKIP for the conditional data-dependent
// one); the exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "deflcp/deflcp.hpp"

namespace {

using deflcp::DeflationState;
using deflcp::Matrix;
using deflcp::Problem;
using deflcp::Vector;

const std::vector<std::string> kFinite = {"kojima", "aggarwal", "konno-kuno",
                                          "gould"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

deflcp::EnumerationResult enumerate(const deflcp::BenchmarkSpec& spec,
                                    int max_solutions) {
  return deflcp::enumerate_solutions(spec.problem, spec.z0, spec.defl,
                                     deflcp::default_config(spec),
                                     max_solutions, spec.pre_deflate);
}

DeflationState state_for(const deflcp::BenchmarkSpec& spec) {
  DeflationState state;
  state.power = spec.defl.power;
  state.shift = spec.defl.shift;
  state.radius = spec.defl.radius;
  return state;
}

bool weak_flag(const Problem& problem, const Vector& r) {
  return deflcp::eval_residual(problem, r).lpNorm<Eigen::Infinity>() <= 1e-8;
}

// Criterion 1: enumeration reproduces the published solution counts and
// vectors for the four finitely-solvable benchmarks, under two seconds each.
bool criterion1(std::string& detail) {
  bool ok = true;
  for (const auto& name : kFinite) {
    const auto spec = deflcp::make_benchmark(name);
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = enumerate(spec, spec.expected_solutions);
    const double elapsed = seconds_since(t0);

    bool problem_ok =
        static_cast<int>(result.solutions.size()) == spec.expected_solutions;
    for (const auto& entry : result.solutions.entries)
      if (deflcp::ncp_residual(spec.problem, entry.root).norm() > 1e-10)
        problem_ok = false;
    for (const Vector& known : spec.known_solutions) {
      bool matched = false;
      for (const auto& entry : result.solutions.entries)
        if ((entry.root - known).lpNorm<Eigen::Infinity>() <= 1e-8)
          matched = true;
      if (!matched) problem_ok = false;
    }
    if (elapsed >= 2.0) problem_ok = false;

    detail += (detail.empty() ? "" : ", ") + name + " " +
              std::to_string(result.solutions.size()) + "/" +
              std::to_string(spec.expected_solutions);
    ok = ok && problem_ok;
  }
  return ok;
}

// Criterion 2: every individual solve stays within 30 Newton iterations.
bool criterion2(std::string& detail) {
  int worst = 0;
  for (const auto& name : kFinite) {
    const auto spec = deflcp::make_benchmark(name);
    const auto result = enumerate(spec, spec.expected_solutions);
    for (const auto& entry : result.solutions.entries)
      worst = std::max(worst, entry.iterations);
  }
  detail = "max iterations " + std::to_string(worst);
  return worst <= 30;
}

// Criterion 3: the Mathiesen continuum yields at least 50 distinct family
// members before the solver gives up.
bool criterion3(std::string& detail) {
  const auto spec = deflcp::make_benchmark("mathiesen");
  const auto result = enumerate(spec, 500);
  const auto& entries = result.solutions.entries;
  bool ok = entries.size() >= 50;
  for (const auto& entry : entries)
    if (!deflcp::family_membership(entry.root, *spec.family, 1e-6)) ok = false;
  for (std::size_t i = 0; i < entries.size() && ok; ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if ((entries[i].root - entries[j].root).norm() <= 1e-7) ok = false;
  detail = std::to_string(entries.size()) + " family members";
  return ok;
}

// Criterion 4: plain norm deflation vanishes along the counterexample ray;
// the complementarity operators stay bounded away from zero inside the bump.
bool criterion4(std::string& detail) {
  const Problem problem = Problem::ncp(2, [](const Vector& z) {
    Vector f(2);
    f << z[1] + z[1] * z[1], z[1] + z[0] + 1;
    return f;
  });
  Vector r(2);
  r << 1, 0;

  bool ok = true;
  for (double t = 1e-1; t >= 1e-8 / 2; t /= 10) {
    Vector z(2);
    z << 1 + t, 0;
    const Vector standard = deflcp::deflate_residual_weak(
        deflcp::ncp_residual(problem, z), z, r, 1.0);
    if (standard.norm() > 1e-12) ok = false;
  }

  DeflationState state;
  state.power = 1.0;
  state.shift = 1.0;
  state.radius = 1e-6;
  state.add_root(r, false);
  for (double t : {1e-7, 1e-8}) {
    Vector z(2);
    z << 1 + t, 0;
    if (deflcp::deflated_ncp_residual(problem, state, z).norm() < 1.0)
      ok = false;
  }
  detail = "standard vanishes, complementarity repels";
  return ok;
}

// Criterion 5: no spurious near-zeros of the deflated residual close to any
// deflated root (20 random directions, 8 radii, seeded generator). The full
// deflation operator is applied, weak part included: for roots on the
// boundary the position operator alone cannot repel approaches that stay on
// a complementarity face, which is also why the driver escalates to the
// weak operator when a solve stalls at a deflated root.
bool criterion5(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double overall_min = deflcp::kInf;

  for (const auto& name : kFinite) {
    const auto spec = deflcp::make_benchmark(name);
    for (const Vector& root : spec.known_solutions) {
      DeflationState state = state_for(spec);
      state.add_root(root, true);
      for (int dir = 0; dir < 20; ++dir) {
        Vector u(spec.problem.n);
        for (Eigen::Index i = 0; i < spec.problem.n; ++i) u[i] = gauss(rng);
        u /= u.norm();
        for (double t = 1e-2; t >= 1e-9 / 2; t /= 10) {
          const Vector z =
              (root + t * u).cwiseMax(spec.problem.lower);  // keep feasible
          const double norm =
              deflcp::deflated_ncp_residual(spec.problem, state, z).norm();
          overall_min = std::min(overall_min, norm);
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "min |deflated residual| %.3g in %.2fs",
                overall_min, elapsed);
  detail = buf;
  return overall_min >= 1e-2 && elapsed <= 10.0;
}

// Criterion 6: deflating any known solution leaves every other known
// solution an exact root of the deflated residual.
bool criterion6(std::string& detail) {
  double worst = 0.0;
  for (const auto& name : kFinite) {
    const auto spec = deflcp::make_benchmark(name);
    for (const Vector& r : spec.known_solutions)
      for (const Vector& s : spec.known_solutions) {
        if ((r - s).norm() == 0.0) continue;
        DeflationState state = state_for(spec);
        state.add_root(r, weak_flag(spec.problem, r));
        worst = std::max(
            worst,
            deflcp::deflated_ncp_residual(spec.problem, state, s).norm());
      }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst |residual| %.3g", worst);
  detail = buf;
  return worst <= 1e-10;
}

// Criterion 7: reformulation-level numerical consistency.
bool criterion7(std::string& detail) {
  bool ok = true;

  // The NCP function vanishes exactly on the complementarity set and
  // nowhere else on a sign grid.
  for (double a : {-2.0, -0.5, 0.0, 0.5, 2.0})
    for (double b : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
      const bool complementary = a >= 0 && b >= 0 && a * b == 0;
      const bool zero = std::abs(deflcp::fb(a, b)) <= 1e-14;
      if (zero != complementary) ok = false;
    }

  // Subgradients (da, db) satisfy (da + 1)^2 + (db + 1)^2 = 1, including
  // the fixed element at the kink.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = trial ? uni(rng) : 0.0;
    const double b = trial ? uni(rng) : 0.0;
    const auto [da, db] = deflcp::fb_subgradient(a, b);
    const double radius =
        (da + 1.0) * (da + 1.0) + (db + 1.0) * (db + 1.0);
    if (std::abs(radius - 1.0) > 1e-12) ok = false;
  }

  // Merit gradient against central differences on Kojima-Shindoh.
  const auto kojima = deflcp::kojima_shindoh();
  auto theta = [&](const Vector& z) {
    return 0.5 * deflcp::ncp_residual(kojima.problem, z).squaredNorm();
  };
  std::uniform_real_distribution<double> interior(0.5, 3.0);
  const double fd_step = std::sqrt(std::numeric_limits<double>::epsilon());
  for (int trial = 0; trial < 10; ++trial) {
    Vector z(4);
    for (int i = 0; i < 4; ++i) z[i] = interior(rng);
    const Matrix J = deflcp::ncp_jacobian_element(kojima.problem, z, fd_step);
    const Vector grad =
        J.transpose() * deflcp::ncp_residual(kojima.problem, z);
    Vector fd(4);
    for (int j = 0; j < 4; ++j) {
      Vector zp = z, zm = z;
      zp[j] += 1e-6;
      zm[j] -= 1e-6;
      fd[j] = (theta(zp) - theta(zm)) / 2e-6;
    }
    if ((grad - fd).norm() / fd.norm() > 1e-5) ok = false;
  }

  // Analytic problem Jacobians against finite differences.
  std::uniform_real_distribution<double> feasible(0.5, 2.0);
  for (const auto& name :
       {"kojima", "aggarwal", "konno-kuno", "gould", "mathiesen"}) {
    const auto spec = deflcp::make_benchmark(name);
    for (int trial = 0; trial < 10; ++trial) {
      Vector z(spec.problem.n);
      for (Eigen::Index i = 0; i < spec.problem.n; ++i) z[i] = feasible(rng);
      const Matrix analytic = spec.problem.jacobian(z);
      const Matrix fd =
          deflcp::fd_jacobian(spec.problem.residual, z, spec.problem.lower,
                              spec.problem.upper, fd_step);
      if ((analytic - fd).norm() / analytic.norm() > 1e-5) ok = false;
    }
  }

  detail = "NCP-function grid, subgradients, merit gradient, Jacobians";
  return ok;
}

// Criterion 8 (conditional): the quasibrittle-fracture LCP, if its data
// file is available.
int criterion8(std::string& detail) {
  const char* path = std::getenv("DEFLCP_TINLOI_DATA");
  if (!path || !std::ifstream(path)) {
    detail = "data not provided";
    return -1;  // skip
  }
  const auto spec = deflcp::tinloi(path);
  const auto result = enumerate(spec, spec.expected_solutions);
  detail = std::to_string(result.solutions.size()) + "/2 solutions";
  return result.solutions.size() == 2 ? 1 : 0;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    bool (*check)(std::string&);
  };
  const Entry entries[] = {
      {"1 solution counts and vectors", criterion1},
      {"2 iteration budget", criterion2},
      {"3 solution continuum", criterion3},
      {"4 counterexample regression", criterion4},
      {"5 nonconvergence near deflated roots", criterion5},
      {"6 preservation of other solutions", criterion6},
      {"7 numerical consistency", criterion7},
  };

  int failures = 0;
  for (const auto& entry : entries) {
    std::string detail;
    bool ok = false;
    try {
      ok = entry.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("%s criterion %s (%s)\n", ok ? "PASS" : "FAIL", entry.label,
                detail.c_str());
  }

  {
    std::string detail;
    int outcome = 0;
    try {
      outcome = criterion8(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (outcome == 0) ++failures;
    std::printf("%s criterion 8 quasibrittle LCP (%s)\n",
                outcome < 0 ? "SKIP" : (outcome ? "PASS" : "FAIL"),
                detail.c_str());
  }

  return failures;
}

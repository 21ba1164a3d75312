// SPDX-License-Identifier: Apache-2.0
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "deflcp/types.hpp"

using deflcp::classify_bounds;
using deflcp::kInf;
using deflcp::Vector;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("classify_bounds puts NCP bounds entirely in the lower-only set") {
  const auto sets = classify_bounds(vec({0, 0}), vec({kInf, kInf}));
  CHECK(sets.lower_only == std::vector<Eigen::Index>{0, 1});
  CHECK(sets.upper_only.empty());
  CHECK(sets.both.empty());
  CHECK(sets.free.empty());
}

TEST_CASE("classify_bounds puts unconstrained variables in the free set") {
  const auto sets = classify_bounds(vec({-kInf, -kInf}), vec({kInf, kInf}));
  CHECK(sets.free == std::vector<Eigen::Index>{0, 1});
  CHECK(sets.lower_only.empty());
}

TEST_CASE("classify_bounds mixed example") {
  const auto sets =
      classify_bounds(vec({0, -kInf, 0, -kInf}), vec({1, 3, kInf, kInf}));
  CHECK(sets.both == std::vector<Eigen::Index>{0});
  CHECK(sets.upper_only == std::vector<Eigen::Index>{1});
  CHECK(sets.lower_only == std::vector<Eigen::Index>{2});
  CHECK(sets.free == std::vector<Eigen::Index>{3});
}

TEST_CASE("classify_bounds rejects l > u") {
  CHECK_THROWS_AS(classify_bounds(vec({1.0}), vec({0.0})),
                  deflcp::InvalidProblem);
}

TEST_CASE("classify_bounds always partitions the index range") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  std::uniform_int_distribution<int> kind(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 12;
    Vector l(n), u(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a = value(rng), b = value(rng);
      switch (kind(rng)) {
        case 0: l[i] = std::min(a, b); u[i] = std::max(a, b); break;
        case 1: l[i] = a; u[i] = kInf; break;
        case 2: l[i] = -kInf; u[i] = a; break;
        default: l[i] = -kInf; u[i] = kInf; break;
      }
    }
    const auto sets = classify_bounds(l, u);
    std::vector<int> hits(n, 0);
    for (auto i : sets.lower_only) ++hits[i];
    for (auto i : sets.upper_only) ++hits[i];
    for (auto i : sets.both) ++hits[i];
    for (auto i : sets.free) ++hits[i];
    for (Eigen::Index i = 0; i < n; ++i) REQUIRE(hits[i] == 1);
  }
}

TEST_CASE("Problem constructor validates bounds") {
  auto F = [](const Vector& z) { return z; };
  CHECK_THROWS_AS(
      deflcp::Problem(2, F, {}, vec({0, 2}), vec({1, 1})),
      deflcp::InvalidProblem);
  const auto ncp = deflcp::Problem::ncp(3, F);
  CHECK(ncp.is_ncp());
  CHECK(ncp.feasible(vec({0, 1, 2})));
  CHECK_FALSE(ncp.feasible(vec({-1, 0, 0})));
}

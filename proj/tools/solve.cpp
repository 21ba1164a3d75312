// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run a built-in benchmark or a user-supplied LCP
// file through the deflation driver and report every distinct solution found.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deflcp/deflcp.hpp"

namespace {

using deflcp::Vector;

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ','))
    if (!token.empty()) values.push_back(std::stod(token));
  return values;
}

// --x0 accepts a scalar (broadcast to n) or a comma-separated n-vector.
Vector parse_x0(const std::string& text, Eigen::Index n) {
  const auto values = parse_numbers(text);
  if (values.size() == 1) return Vector::Constant(n, values[0]);
  if (static_cast<Eigen::Index>(values.size()) != n)
    throw std::invalid_argument("--x0 must be a scalar or a vector of length " +
                                std::to_string(n));
  return Eigen::Map<const Vector>(values.data(), n);
}

// --pre-deflate takes semicolon-separated comma-vectors: "v1,..;v2,..".
std::vector<Vector> parse_pre_deflate(const std::string& text,
                                      Eigen::Index n) {
  std::vector<Vector> points;
  std::string chunk;
  std::istringstream in(text);
  while (std::getline(in, chunk, ';')) {
    if (chunk.empty()) continue;
    const auto values = parse_numbers(chunk);
    if (static_cast<Eigen::Index>(values.size()) != n)
      throw std::invalid_argument(
          "--pre-deflate vectors must have length " + std::to_string(n));
    points.push_back(Eigen::Map<const Vector>(values.data(), n));
  }
  return points;
}

double solution_residual_norm(const deflcp::Problem& problem,
                              const Vector& z) {
  return problem.is_ncp() ? deflcp::ncp_residual(problem, z).norm()
                          : deflcp::mcp_residual(problem, z).norm();
}

void print_table(const deflcp::BenchmarkSpec& spec,
                 const deflcp::EnumerationResult& result) {
  std::printf("problem: %s   (p=%g, alpha=%g, delta=%g)\n", spec.name.c_str(),
              spec.defl.power, spec.defl.shift, spec.defl.radius);
  int index = 0;
  for (const auto& entry : result.solutions.entries) {
    std::printf("solution %d  (%d iterations, |Psi| = %.3e)\n", ++index,
                entry.iterations,
                solution_residual_norm(spec.problem, entry.root));
    std::printf("  z = [");
    for (Eigen::Index i = 0; i < entry.root.size(); ++i)
      std::printf("%s%.12g", i ? ", " : "", entry.root[i]);
    std::printf("]\n  F = [");
    for (Eigen::Index i = 0; i < entry.residual.size(); ++i)
      std::printf("%s%.12g", i ? ", " : "", entry.residual[i]);
    std::printf("]\n");
  }
  std::printf("%zu solution(s) found; stop reason: %s\n",
              result.solutions.size(), deflcp::to_string(result.stop_reason));
}

void print_json(const deflcp::BenchmarkSpec& spec, double tol,
                const deflcp::EnumerationResult& result) {
  nlohmann::json doc;
  doc["problem"] = spec.name;
  doc["params"] = {{"p", spec.defl.power},
                   {"alpha", spec.defl.shift},
                   {"delta", spec.defl.radius},
                   {"tol", tol}};
  doc["status"] = deflcp::to_string(result.stop_reason);
  doc["solutions"] = nlohmann::json::array();
  int index = 0;
  for (const auto& entry : result.solutions.entries) {
    nlohmann::json record;
    record["index"] = ++index;
    record["z"] = std::vector<double>(entry.root.begin(), entry.root.end());
    record["F"] =
        std::vector<double>(entry.residual.begin(), entry.residual.end());
    record["residual_norm"] =
        solution_residual_norm(spec.problem, entry.root);
    record["iterations"] = entry.iterations;
    doc["solutions"].push_back(record);
  }
  std::cout << doc.dump(2) << "\n";
}

void print_csv(const deflcp::BenchmarkSpec& spec,
               const deflcp::EnumerationResult& result) {
  const Eigen::Index n = spec.problem.n;
  std::printf("index");
  for (Eigen::Index i = 0; i < n; ++i) std::printf(",z%lld", (long long)i + 1);
  for (Eigen::Index i = 0; i < n; ++i) std::printf(",F%lld", (long long)i + 1);
  std::printf(",residual_norm,iterations\n");
  int index = 0;
  for (const auto& entry : result.solutions.entries) {
    std::printf("%d", ++index);
    for (Eigen::Index i = 0; i < n; ++i)
      std::printf(",%.17g", entry.root[i]);
    for (Eigen::Index i = 0; i < n; ++i)
      std::printf(",%.17g", entry.residual[i]);
    std::printf(",%.17g,%d\n",
                solution_residual_norm(spec.problem, entry.root),
                entry.iterations);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Find multiple solutions of complementarity problems by "
               "deflated semismooth Newton iteration"};

  std::string problem_name, lcp_file, x0_text, pre_deflate_text;
  std::string linesearch_name = "sun", format = "table";
  double p = 0, alpha = 0, delta = 0, tol = 1e-10, gamma = 1.0;
  int max_solutions = 100, max_iter = 200;

  auto* problem_opt =
      app.add_option("--problem", problem_name, "Benchmark name")
          ->check(CLI::IsMember(deflcp::benchmark_names()));
  auto* file_opt =
      app.add_option("--lcp-file", lcp_file, "Dense LCP data file");
  app.add_option("--x0", x0_text, "Initial guess (scalar or comma-separated)");
  auto* p_opt = app.add_option("--p", p, "Deflation power");
  auto* alpha_opt = app.add_option("--alpha", alpha, "Deflation shift");
  auto* delta_opt = app.add_option("--delta", delta, "Bump support radius");
  app.add_option("--tol", tol, "l2 residual tolerance");
  app.add_option("--max-solutions", max_solutions, "Enumeration cap");
  app.add_option("--max-iter", max_iter, "Newton iteration cap per solve");
  auto* ls_opt = app.add_option("--linesearch", linesearch_name,
                                "Linesearch: sun or armijo")
                     ->check(CLI::IsMember({"sun", "armijo"}));
  app.add_option("--pre-deflate", pre_deflate_text,
                 "Points to deflate before solving, \"v1;v2\" with "
                 "comma-separated components");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--gamma", gamma, "Mathiesen parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    if (problem_opt->count() == 0 && file_opt->count() == 0)
      throw std::invalid_argument("one of --problem or --lcp-file is required");

    deflcp::BenchmarkSpec spec;
    if (problem_opt->count()) {
      spec = deflcp::make_benchmark(problem_name, gamma, lcp_file);
    } else {
      spec.name = lcp_file;
      spec.problem = deflcp::lcp_from_file(lcp_file);
      spec.z0 = deflcp::Vector::Zero(spec.problem.n);
    }

    if (p_opt->count()) spec.defl.power = p;
    if (alpha_opt->count()) spec.defl.shift = alpha;
    if (delta_opt->count()) spec.defl.radius = delta;
    if (!x0_text.empty()) spec.z0 = parse_x0(x0_text, spec.problem.n);
    if (!pre_deflate_text.empty())
      spec.pre_deflate = parse_pre_deflate(pre_deflate_text, spec.problem.n);
    if (ls_opt->count())
      spec.linesearch = linesearch_name == "armijo"
                            ? deflcp::Linesearch::ProjectedArmijo
                            : deflcp::Linesearch::ProjectedSun;

    deflcp::SolverConfig config = deflcp::default_config(spec);
    config.tol = tol;
    config.max_iter = max_iter;

    const deflcp::EnumerationResult result = deflcp::enumerate_solutions(
        spec.problem, spec.z0, spec.defl, config, max_solutions,
        spec.pre_deflate);

    if (format == "json")
      print_json(spec, tol, result);
    else if (format == "csv")
      print_csv(spec, result);
    else
      print_table(spec, result);

    return result.solutions.empty() ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rose/driver.hpp"
#include "rose/problems.hpp"

namespace rose::bench {

enum class Metric { Runtime, Iterations, FEvals, InnerIterations };

Metric parse_metric(const std::string& name);
const char* to_string(Metric metric);

struct ProblemCase {
  std::string name;
  double alpha = 0.0;
  std::function<std::shared_ptr<const StructuredObjective>()> make;
  Vector x0;
};

struct MethodCase {
  std::string name;
  RoseConfig config;
};

struct ExperimentGrid {
  std::vector<ProblemCase> problems;
  std::vector<MethodCase> methods;
  Metric metric = Metric::Runtime;
};

// One row of the results CSV.
struct CellResult {
  std::string problem;
  std::string method;
  double alpha = 0.0;
  std::size_t memory = 0;
  int iterations = 0;
  int f_evals = 0;
  int inner_iters_total = 0;
  double runtime_ms = 0.0;
  double final_grad_norm = 0.0;
  std::string status;

  bool solved() const { return status == "GradientTol" || status == "FairTriple"; }
  // Metric value, +inf for unsolved cells.
  double metric_value(Metric metric) const;
};

struct RunOptions {
  int repeats = 3;         // runtime is the median over the repeats
  std::string trace_dir;   // per-iteration CSV per cell when non-empty
  int jobs = 1;
};

// Runs every (problem, method) cell, problems outer. A cell that throws is
// recorded with status "Error" and never aborts the grid.
std::vector<CellResult> run_grid(const ExperimentGrid& grid,
                                 const RunOptions& options = {});

// Problems x methods matrix of metric values; a problem is one
// (problem, alpha, memory) combination.
struct MetricTable {
  std::vector<std::string> problems;
  std::vector<std::string> methods;
  Eigen::MatrixXd t;
};

MetricTable metric_table(const std::vector<CellResult>& cells, Metric metric);

// Step function rho(tau), stored as its breakpoints (tau, rho), tau
// ascending.
struct ProfileCurve {
  std::string method;
  std::vector<std::pair<double, double>> points;

  double rho_at(double tau) const;
};

struct Profile {
  std::vector<ProfileCurve> curves;
  int dropped_problems = 0;  // rows without a finite entry
};

// rho_s(tau) = |{p : t_ps / min_s' t_ps' <= tau}| / |P|, evaluated at every
// distinct finite ratio. Throws std::invalid_argument on empty input.
Profile performance_profile(const Eigen::MatrixXd& t,
                            const std::vector<std::string>& methods);

inline constexpr const char* kResultsHeader =
    "problem,method,alpha,memory,iterations,f_evals,inner_iters_total,"
    "runtime_ms,final_grad_norm,status";
inline constexpr const char* kProfileHeader = "method,tau,rho";

void write_results_csv(std::ostream& out, const std::vector<CellResult>& cells);
std::vector<CellResult> read_results_csv(std::istream& in);
void write_profile_csv(std::ostream& out, const Profile& profile);
Profile read_profile_csv(std::istream& in);
void write_trace_csv(std::ostream& out, const RoseResult& result);

std::string memory_label(std::size_t memory);
std::size_t parse_memory(const std::string& label);

// Quadratic benchmark for each alpha, started from x0 = 0.
std::vector<ProblemCase> quadratic_suite(const std::vector<double>& alphas,
                                         double stencil_scale = 1.0);
// Toy non-convex problem of size n for each alpha, started from
// x0_i = 3 sin(i + 1).
std::vector<ProblemCase> toy_suite(Index n, const std::vector<double>& alphas);
Vector toy_start(Index n);

// Builds a method from names such as rose-dg-full, rose-ds-upperz,
// rose-dg-bbband, scalar-taug or scalar-taus-upperz, on top of `base`.
MethodCase method_from_name(const std::string& name, const RoseConfig& base);

}  // namespace rose::bench

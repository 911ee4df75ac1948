#pragma once

#include <optional>
#include <vector>

#include "rose/operators.hpp"

namespace rose {

struct SolveReport {
  int iterations = 0;
  // |rhs - A u| / |rhs|, evaluated explicitly at exit.
  double relative_residual = 0.0;
  // Relative residual in the preconditioner norm; drives the stopping test.
  double preconditioned_residual = 0.0;
  // relative_residual <= rel_tol.
  bool converged = false;
  // The Lanczos process produced a zero beta before convergence.
  bool breakdown = false;
  // Relative preconditioned residual after each iteration, starting with
  // the initial value 1.
  std::vector<double> residual_history;
};

struct SolveResult {
  Vector solution;
  SolveReport report;
};

// Jacobi entries below this are replaced by 1.
inline constexpr double kJacobiFloor = 1e-12;

// Preconditioned MINRES (Paige-Saunders) for the symmetric system
// op * u = rhs with the diagonal preconditioner precond_diag, starting from
// u = 0. Stops after max_iter iterations or once the preconditioned
// residual, relative to its initial value, drops to rel_tol and the
// explicit residual agrees. rhs = 0
// returns u = 0 with zero iterations.
SolveResult minres_solve(const SymmetricOperator& op, const Vector& rhs,
                         const Vector& precond_diag, int max_iter,
                         double rel_tol);

// Adaptive MINRES iteration budget.
struct EsParams {
  double eps0 = 1e-3;
  double eps1 = 1e-4;
  int eta0 = 10;
  int eta1 = 30;
  int eta2 = 50;

  // Throws std::invalid_argument unless 0 < eps1 < eps0 < 1 and
  // 0 < eta0 < eta1 < eta2.
  void validate() const;
};

// Small relative progress |J_curr - J_prev| / |J_prev| buys a large budget:
// <= eps1 -> eta2, <= eps0 -> eta1, otherwise eta0. Without a previous
// value (first outer iteration) the budget is eta0.
int es_budget(std::optional<double> j_prev, double j_curr, const EsParams& p);

}  // namespace rose

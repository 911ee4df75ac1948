#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rose/krylov.hpp"
#include "rose/lbfgs.hpp"
#include "rose/linesearch.hpp"
#include "rose/operators.hpp"
#include "rose/problems.hpp"
#include "rose/scaling.hpp"

namespace rose {

// How the seed part D_k is chosen. The Diagonal modes use per-coordinate
// secant ratios, the Scalar modes a multiple of the identity.
enum class SeedMode { DiagonalDs, DiagonalDg, ScalarTauS, ScalarTauG, ScalarTauZ };

struct InnerSolverConfig {
  // Budget from es_budget() when true, otherwise max_iter.
  bool adaptive = false;
  int max_iter = 50;
  double rel_tol = 1e-2;
  EsParams es;
};

struct RoseConfig {
  std::size_t memory = 5;  // kUnlimitedMemory for no limit
  double eps = 1e-6;       // gradient norm tolerance
  double c_s = 1e-9;
  CautiousParams cautious;
  SeedMode seed_mode = SeedMode::DiagonalDg;
  BoundChoice bound_choice = BoundChoice::Full;
  LineSearchConfig line_search;
  InnerSolverConfig inner;
  bool exact_seed_solve = false;
  int max_outer = 5000;
  bool fair_stopping = false;
  double tau_init = 1.0;  // D_0 = tau_init * I

  // Throws std::invalid_argument on inconsistent parameters.
  void validate() const;
};

struct IterationRecord {
  int k = 0;
  double J = 0.0;          // J(x_{k+1})
  double grad_norm = 0.0;  // |grad J(x_{k+1})|
  double alpha = 0.0;
  int f_evals = 0;
  int inner_iterations = 0;
  bool pair_accepted = false;
  // Interval the seed part D_k was projected onto, its cautious bounds and
  // the extreme diagonal entries of D_k.
  double seed_lower = 0.0;
  double seed_upper = 0.0;
  double omega_l = 0.0;
  double omega_u = std::numeric_limits<double>::infinity();
  double seed_min = 0.0;
  double seed_max = 0.0;
  // The direction was not a descent direction and was replaced by -g.
  bool steepest_fallback = false;
};

enum class Status { GradientTol, FairTriple, MaxOuter, LineSearchFail, NonFinite };

const char* to_string(Status status);

struct RoseResult {
  Vector x_final;
  double initial_value = 0.0;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  std::vector<IterationRecord> records;
  Status status = Status::MaxOuter;
  std::string diagnostic;

  int iterations() const { return static_cast<int>(records.size()); }
  int total_f_evals() const;
  int total_inner_iterations() const;
  bool solved() const {
    return status == Status::GradientTol || status == Status::FairTriple;
  }
};

// State handed to an observer after the line search of iteration k, before
// the new pair is offered to the buffer.
struct IterationView {
  int k;
  const Vector& x;       // x_k
  const Vector& g;       // grad J(x_k)
  const Vector& d;       // d_k
  double alpha;
  const Vector& x_next;  // x_{k+1}
  const Vector& g_next;
  const SymmetricOperator& seed;  // B_k^(0) = D_k + S_k
  const PairBuffer& pairs;        // pairs used for d_k
};

using IterationObserver = std::function<void(const IterationView&)>;

// Structured inverse L-BFGS with seed B_k^(0) = D_k + S_k and cautious
// updating of both the stored pairs and the spectrum of D_k.
RoseResult rose_minimize(const StructuredObjective& problem, const Vector& x0,
                         const RoseConfig& cfg,
                         const IterationObserver& observer = {});

}  // namespace rose

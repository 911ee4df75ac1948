#include "rose/driver.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <Eigen/SparseCholesky>

namespace rose {

namespace {

// D_k and the interval it was projected onto.
struct SeedState {
  Vector diag;
  bool scalar = false;
  double tau = 1.0;
  TrustInterval interval;

  SymmetricOperator op(Index n) const {
    return scalar ? SymmetricOperator::scaled_identity(tau, n)
                  : SymmetricOperator::diagonal(diag);
  }
};

bool is_scalar(SeedMode mode) {
  return mode == SeedMode::ScalarTauS || mode == SeedMode::ScalarTauG ||
         mode == SeedMode::ScalarTauZ;
}

class SeedSolver {
 public:
  SeedSolver(const SymmetricOperator& seed, const RoseConfig& cfg, int budget)
      : seed_(seed), cfg_(cfg), budget_(budget) {
    if (cfg.exact_seed_solve) {
      Eigen::SparseMatrix<double> a(seed.assemble());
      ldlt_.compute(a);
      if (ldlt_.info() != Eigen::Success) {
        throw std::runtime_error("exact seed solve: factorization failed");
      }
    } else {
      precond_ = seed.diagonal();
    }
  }

  Vector operator()(const Vector& rhs) {
    if (cfg_.exact_seed_solve) return ldlt_.solve(rhs);
    SolveResult r =
        minres_solve(seed_, rhs, precond_, budget_, cfg_.inner.rel_tol);
    iterations_ += r.report.iterations;
    return std::move(r.solution);
  }

  int iterations() const { return iterations_; }

 private:
  const SymmetricOperator& seed_;
  const RoseConfig& cfg_;
  int budget_;
  Vector precond_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  int iterations_ = 0;
};

bool fair_triple(double j_new, double j_old, double j0, const Vector& step,
                 const Vector& x_new, double grad_norm) {
  const double scale = 1.0 + std::abs(j0);
  return std::abs(j_new - j_old) <= 1e-5 * scale &&
         step.norm() <= 1e-3 * (1.0 + x_new.norm()) &&
         grad_norm <= 1e-3 * scale;
}

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::GradientTol: return "GradientTol";
    case Status::FairTriple: return "FairTriple";
    case Status::MaxOuter: return "MaxOuter";
    case Status::LineSearchFail: return "LineSearchFail";
    case Status::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

void RoseConfig::validate() const {
  if (!(eps >= 0.0)) throw std::invalid_argument("RoseConfig: eps must be >= 0");
  if (!(c_s > 0.0)) throw std::invalid_argument("RoseConfig: c_s must be > 0");
  if (!(cautious.c0 >= 0.0) || !(cautious.C0 >= cautious.c0)) {
    throw std::invalid_argument("RoseConfig: need 0 <= c0 <= C0");
  }
  if (!(cautious.c1 > 0.0) || !(cautious.c2 > 0.0)) {
    throw std::invalid_argument("RoseConfig: c1 and c2 must be > 0");
  }
  if (!(tau_init > 0.0) || !std::isfinite(tau_init)) {
    throw std::invalid_argument("RoseConfig: tau_init must be > 0");
  }
  if (max_outer < 0) throw std::invalid_argument("RoseConfig: max_outer < 0");
  line_search.validate();
  if (!exact_seed_solve) {
    if (inner.adaptive) {
      inner.es.validate();
    } else if (inner.max_iter < 1) {
      throw std::invalid_argument("RoseConfig: inner max_iter must be >= 1");
    }
    if (!(inner.rel_tol >= 0.0)) {
      throw std::invalid_argument("RoseConfig: inner rel_tol must be >= 0");
    }
  }
}

int RoseResult::total_f_evals() const {
  return std::accumulate(records.begin(), records.end(), 0,
                         [](int acc, const IterationRecord& r) {
                           return acc + r.f_evals;
                         });
}

int RoseResult::total_inner_iterations() const {
  return std::accumulate(records.begin(), records.end(), 0,
                         [](int acc, const IterationRecord& r) {
                           return acc + r.inner_iterations;
                         });
}

RoseResult rose_minimize(const StructuredObjective& problem, const Vector& x0,
                         const RoseConfig& cfg,
                         const IterationObserver& observer) {
  cfg.validate();
  const Index n = problem.dim();
  if (x0.size() != n) {
    throw std::invalid_argument("rose_minimize: x0 has the wrong dimension");
  }
  if (!x0.allFinite()) {
    throw std::invalid_argument("rose_minimize: x0 must be finite");
  }

  RoseResult result;
  Vector x = x0;
  double j = problem.value(x);
  Vector g = problem.gradient(x);
  result.initial_value = j;

  auto finish = [&](Status status, std::string diagnostic = {}) {
    result.x_final = x;
    result.final_value = j;
    result.final_grad_norm = g.norm();
    result.status = status;
    result.diagnostic = std::move(diagnostic);
    return result;
  };

  if (!std::isfinite(j) || !g.allFinite()) {
    return finish(Status::NonFinite, "objective or gradient not finite at x0");
  }
  if (g.norm() <= cfg.eps) return finish(Status::GradientTol);

  const bool scalar = is_scalar(cfg.seed_mode);
  SeedState seed;
  seed.scalar = scalar;
  seed.tau = cfg.tau_init;
  seed.diag = Vector::Constant(n, cfg.tau_init);
  seed.interval = TrustInterval{cfg.tau_init, cfg.tau_init, 0.0,
                                std::numeric_limits<double>::infinity()};

  SymmetricOperator reg = problem.regularizer_hessian(x);
  PairBuffer pairs(cfg.memory);
  std::optional<double> j_prev;

  for (int k = 0; k < cfg.max_outer; ++k) {
    const SymmetricOperator b0 = SymmetricOperator::sum(seed.op(n), reg);
    const int budget = cfg.inner.adaptive ? es_budget(j_prev, j, cfg.inner.es)
                                          : cfg.inner.max_iter;
    SeedSolver solver(b0, cfg, budget);
    Vector d = two_loop_direction(
        g, pairs, [&solver](const Vector& rhs) { return solver(rhs); });

    IterationRecord rec;
    rec.k = k;
    rec.inner_iterations = solver.iterations();
    rec.seed_lower = seed.interval.lower;
    rec.seed_upper = seed.interval.upper;
    rec.omega_l = seed.interval.omega_l;
    rec.omega_u = seed.interval.omega_u;
    rec.seed_min = scalar ? seed.tau : seed.diag.minCoeff();
    rec.seed_max = scalar ? seed.tau : seed.diag.maxCoeff();

    double slope = g.dot(d);
    if (!d.allFinite() || !(slope < 0.0)) {
      // Only reachable with inexact seed solves.
      d = -g;
      slope = -g.squaredNorm();
      rec.steepest_fallback = true;
    }

    // Cache the most recent trial point so the accepted step is not
    // re-evaluated.
    double last_alpha = std::numeric_limits<double>::quiet_NaN();
    Vector x_trial(n);
    double j_trial = 0.0;
    std::optional<Vector> g_trial;
    auto eval_at = [&](double a) {
      if (a == last_alpha) return;
      last_alpha = a;
      x_trial = x + a * d;
      j_trial = problem.value(x_trial);
      g_trial.reset();
    };
    auto phi = [&](double a) {
      eval_at(a);
      return j_trial;
    };
    auto dphi = [&](double a) {
      eval_at(a);
      if (!g_trial) g_trial = problem.gradient(x_trial);
      return g_trial->dot(d);
    };

    LineSearchResult ls =
        cfg.line_search.mode == LineSearchMode::Armijo
            ? armijo_backtracking(phi, j, slope, cfg.line_search)
            : wolfe_search(phi, dphi, j, slope, cfg.line_search);
    rec.alpha = ls.alpha;
    rec.f_evals = ls.evals;
    if (!ls.success) {
      std::ostringstream msg;
      msg << "line search failed at iteration " << k << " after " << ls.evals
          << " trials";
      return finish(Status::LineSearchFail, msg.str());
    }

    eval_at(ls.alpha);
    if (!g_trial) g_trial = problem.gradient(x_trial);
    Vector x_next = std::move(x_trial);
    Vector g_next = std::move(*g_trial);
    const double j_next = j_trial;
    last_alpha = std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(j_next) || !g_next.allFinite()) {
      return finish(Status::NonFinite, "objective or gradient not finite");
    }

    Vector s = x_next - x;
    Vector y = g_next - g;

    if (observer) {
      observer(IterationView{k, x, g, d, ls.alpha, x_next, g_next, b0, pairs});
    }

    rec.pair_accepted = pairs.maybe_store(s, y, cfg.c_s);
    const double grad_norm = g_next.norm();
    rec.J = j_next;
    rec.grad_norm = grad_norm;
    result.records.push_back(rec);

    const bool fair =
        cfg.fair_stopping &&
        fair_triple(j_next, j, result.initial_value, s, x_next, grad_norm);

    j_prev = j;
    x = std::move(x_next);
    g = std::move(g_next);
    j = j_next;

    if (grad_norm <= cfg.eps) return finish(Status::GradientTol);
    if (fair) return finish(Status::FairTriple);

    // Seed for the next iteration, computed from (s_k, y_k) whether or not
    // the pair was stored.
    reg = problem.regularizer_hessian(x);
    const Vector z = y - reg.apply(s);
    const BBScalars bb = bb_scalars(s, z);
    const TrustInterval t =
        trust_interval(bb, cautious_bounds(grad_norm, cfg.cautious));
    seed.interval = restrict_interval(t, cfg.bound_choice, bb);

    switch (cfg.seed_mode) {
      case SeedMode::DiagonalDs:
      case SeedMode::DiagonalDg:
        seed.diag = build_diagonal_seed(
            s, z, seed.interval,
            cfg.seed_mode == SeedMode::DiagonalDs ? DiagonalFormula::Ds
                                                  : DiagonalFormula::Dg,
            seed.diag);
        break;
      case SeedMode::ScalarTauS:
        seed.tau = seed.interval.clamp(bb.tau_s);
        break;
      case SeedMode::ScalarTauG:
        seed.tau = seed.interval.clamp(bb.tau_g);
        break;
      case SeedMode::ScalarTauZ:
        seed.tau = seed.interval.clamp(bb.tau_z.value_or(seed.tau));
        break;
    }
  }
  return finish(Status::MaxOuter);
}

}  // namespace rose

#pragma once

#include <functional>

namespace rose {

enum class LineSearchMode { Armijo, WeakWolfe, StrongWolfe };

struct LineSearchConfig {
  double sigma = 1e-4;  // sufficient decrease
  double beta = 0.5;    // backtracking factor
  double eta = 0.9;     // curvature
  LineSearchMode mode = LineSearchMode::Armijo;
  int max_trials = 50;

  // Throws std::invalid_argument unless 0 < sigma < eta < 1, 0 < beta < 1
  // and max_trials >= 1.
  void validate() const;
};

struct LineSearchResult {
  double alpha = 0.0;
  int evals = 0;
  bool success = false;
};

// phi(alpha) = J(x + alpha d), dphi(alpha) = grad J(x + alpha d)' d.
using LineFunction = std::function<double(double)>;

// First alpha in 1, beta, beta^2, ... with
//   phi(alpha) <= phi0 + alpha * sigma * slope0.
// Throws std::invalid_argument unless slope0 < 0. Runs out of trials with
// success = false.
LineSearchResult armijo_backtracking(const LineFunction& phi, double phi0,
                                     double slope0,
                                     const LineSearchConfig& cfg);

// Step satisfying sufficient decrease and the weak or strong curvature
// condition selected by cfg.mode, starting from the full step. Bracketing
// doubles the step until the minimum is enclosed; zoom then uses safeguarded
// quadratic interpolation for up to 30 trials.
LineSearchResult wolfe_search(const LineFunction& phi, const LineFunction& dphi,
                              double phi0, double slope0,
                              const LineSearchConfig& cfg);

}  // namespace rose

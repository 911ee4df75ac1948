#include "rose/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rose {

namespace {

constexpr int kZoomBudget = 30;
constexpr double kExpansion = 2.0;

void require_descent(double slope0) {
  if (!(slope0 < 0.0)) {
    throw std::invalid_argument("line search: not a descent direction");
  }
}

bool curvature_ok(double slope, double slope0, const LineSearchConfig& cfg) {
  if (cfg.mode == LineSearchMode::StrongWolfe) {
    return std::abs(slope) <= cfg.eta * std::abs(slope0);
  }
  return slope >= cfg.eta * slope0;
}

// Minimizer of the quadratic through (lo, f_lo) with slope g_lo and
// (hi, f_hi), falling back to bisection when it lands too close to either
// end or is not finite.
double interpolate(double lo, double f_lo, double g_lo, double hi,
                   double f_hi) {
  const double width = hi - lo;
  const double mid = 0.5 * (lo + hi);
  if (!std::isfinite(f_hi)) return mid;
  const double curv = f_hi - f_lo - g_lo * width;
  if (!(curv > 0.0)) return mid;
  const double a = lo - g_lo * width * width / (2.0 * curv);
  const double left = std::min(lo, hi) + 0.1 * std::abs(width);
  const double right = std::max(lo, hi) - 0.1 * std::abs(width);
  if (!std::isfinite(a) || a < left || a > right) return mid;
  return a;
}

}  // namespace

void LineSearchConfig::validate() const {
  if (!(0.0 < sigma && sigma < 1.0 && 0.0 < beta && beta < 1.0)) {
    throw std::invalid_argument("LineSearchConfig: sigma, beta must be in (0,1)");
  }
  if (!(sigma < eta && eta < 1.0)) {
    throw std::invalid_argument("LineSearchConfig: need sigma < eta < 1");
  }
  if (max_trials < 1) {
    throw std::invalid_argument("LineSearchConfig: max_trials must be >= 1");
  }
}

LineSearchResult armijo_backtracking(const LineFunction& phi, double phi0,
                                     double slope0,
                                     const LineSearchConfig& cfg) {
  require_descent(slope0);
  LineSearchResult res;
  double alpha = 1.0;
  for (int trial = 0; trial < cfg.max_trials; ++trial) {
    const double f = phi(alpha);
    ++res.evals;
    if (f <= phi0 + alpha * cfg.sigma * slope0) {
      res.alpha = alpha;
      res.success = true;
      return res;
    }
    alpha *= cfg.beta;
  }
  res.alpha = alpha;
  return res;
}

LineSearchResult wolfe_search(const LineFunction& phi, const LineFunction& dphi,
                              double phi0, double slope0,
                              const LineSearchConfig& cfg) {
  require_descent(slope0);
  LineSearchResult res;

  auto sufficient = [&](double a, double f) {
    return std::isfinite(f) && f <= phi0 + a * cfg.sigma * slope0;
  };

  auto zoom = [&](double lo, double f_lo, double g_lo, double hi,
                  double f_hi) {
    for (int i = 0; i < kZoomBudget; ++i) {
      const double a = interpolate(lo, f_lo, g_lo, hi, f_hi);
      const double f = phi(a);
      ++res.evals;
      if (!sufficient(a, f) || f >= f_lo) {
        hi = a;
        f_hi = f;
        continue;
      }
      const double g = dphi(a);
      if (curvature_ok(g, slope0, cfg)) {
        res.alpha = a;
        res.success = true;
        return;
      }
      if (g * (hi - lo) >= 0.0) {
        hi = lo;
        f_hi = f_lo;
      }
      lo = a;
      f_lo = f;
      g_lo = g;
    }
    res.alpha = lo;
  };

  double a_prev = 0.0;
  double f_prev = phi0;
  double g_prev = slope0;
  double a = 1.0;
  for (int trial = 0; trial < cfg.max_trials; ++trial) {
    const double f = phi(a);
    ++res.evals;
    if (!sufficient(a, f) || (trial > 0 && f >= f_prev)) {
      zoom(a_prev, f_prev, g_prev, a, f);
      return res;
    }
    const double g = dphi(a);
    if (curvature_ok(g, slope0, cfg)) {
      res.alpha = a;
      res.success = true;
      return res;
    }
    if (g >= 0.0) {
      zoom(a, f, g, a_prev, f_prev);
      return res;
    }
    a_prev = a;
    f_prev = f;
    g_prev = g;
    a *= kExpansion;
  }
  res.alpha = a_prev;
  return res;
}

}  // namespace rose

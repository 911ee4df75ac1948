#include "rose/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rose {

SolveResult minres_solve(const SymmetricOperator& op, const Vector& rhs,
                         const Vector& precond_diag, int max_iter,
                         double rel_tol) {
  const Index n = op.dim();
  if (rhs.size() != n || precond_diag.size() != n) {
    throw std::invalid_argument("minres_solve: dimension mismatch");
  }

  SolveResult result{Vector::Zero(n), {}};
  SolveReport& rep = result.report;

  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    rep.converged = true;
    rep.residual_history.push_back(0.0);
    return result;
  }

  Vector minv(n);
  for (Index i = 0; i < n; ++i) {
    const double d = precond_diag[i];
    minv[i] = d < kJacobiFloor ? 1.0 : 1.0 / d;
  }

  Vector& x = result.solution;
  Vector r1 = rhs;
  Vector r2 = rhs;
  Vector y = minv.cwiseProduct(r1);
  const double beta1 = std::sqrt(r1.dot(y));

  Vector w = Vector::Zero(n);
  Vector w1 = Vector::Zero(n);
  Vector w2 = Vector::Zero(n);
  Vector v(n);

  double beta = beta1;
  double oldb = 0.0;
  double dbar = 0.0;
  double epsln = 0.0;
  double phibar = beta1;
  double cs = -1.0;
  double sn = 0.0;

  rep.residual_history.push_back(1.0);
  rep.preconditioned_residual = 1.0;

  for (int itn = 1; itn <= max_iter; ++itn) {
    const double s = 1.0 / beta;
    v = s * y;
    y = op.apply(v);
    if (itn >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1.swap(r2);
    r2 = y;
    y = minv.cwiseProduct(r2);
    oldb = beta;
    const double beta_sq = r2.dot(y);
    if (beta_sq < 0.0) {
      throw std::logic_error("minres_solve: preconditioner is not SPD");
    }
    beta = std::sqrt(beta_sq);

    // Apply the previous rotation, then build the new one.
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;

    const double gamma =
        std::max(std::hypot(gbar, beta), std::numeric_limits<double>::epsilon());
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    w1.swap(w2);
    w2.swap(w);
    w = (v - oldeps * w1 - delta * w2) / gamma;
    x += phi * w;

    rep.iterations = itn;
    rep.preconditioned_residual = phibar / beta1;
    rep.residual_history.push_back(rep.preconditioned_residual);

    // The preconditioned estimate triggers the stop; the explicit residual
    // confirms it, otherwise the recurrence keeps going.
    if (rep.preconditioned_residual <= rel_tol &&
        (rhs - op.apply(x)).norm() <= rel_tol * rhs_norm) {
      break;
    }
    if (beta == 0.0) {
      rep.breakdown = rep.preconditioned_residual > rel_tol;
      break;
    }
  }

  rep.relative_residual = (rhs - op.apply(x)).norm() / rhs_norm;
  rep.converged = rep.relative_residual <= rel_tol;
  return result;
}

void EsParams::validate() const {
  if (!(0.0 < eps1 && eps1 < eps0 && eps0 < 1.0)) {
    throw std::invalid_argument("EsParams: need 0 < eps1 < eps0 < 1");
  }
  if (!(0 < eta0 && eta0 < eta1 && eta1 < eta2)) {
    throw std::invalid_argument("EsParams: need 0 < eta0 < eta1 < eta2");
  }
}

int es_budget(std::optional<double> j_prev, double j_curr, const EsParams& p) {
  if (!j_prev) return p.eta0;
  const double change = std::abs(j_curr - *j_prev);
  const double scale = std::abs(*j_prev);
  if (change <= p.eps1 * scale) return p.eta2;
  if (change <= p.eps0 * scale) return p.eta1;
  return p.eta0;
}

}  // namespace rose

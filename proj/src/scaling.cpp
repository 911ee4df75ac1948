#include "rose/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rose {

BBScalars bb_scalars(const Vector& s, const Vector& z) {
  if (s.size() != z.size()) {
    throw std::invalid_argument("bb_scalars: dimension mismatch");
  }
  const double ss = s.squaredNorm();
  if (!(ss > 0.0)) {
    throw std::invalid_argument("bb_scalars: s must be nonzero");
  }
  BBScalars bb;
  bb.rho = z.dot(s);
  bb.tau_s = bb.rho / ss;
  bb.tau_g = z.norm() / std::sqrt(ss);
  if (bb.rho != 0.0) bb.tau_z = z.squaredNorm() / bb.rho;
  return bb;
}

CautiousBounds cautious_bounds(double grad_norm, const CautiousParams& params) {
  const double scaled = params.c1 * std::pow(grad_norm, params.c2);
  CautiousBounds b;
  b.omega_l = std::min(params.c0, scaled);
  b.omega_u = scaled > 0.0 ? std::max(params.C0, 1.0 / scaled)
                           : std::numeric_limits<double>::infinity();
  return b;
}

double TrustInterval::clamp(double t) const {
  return std::min(upper, std::max(lower, t));
}

TrustInterval trust_interval(const BBScalars& bb, const CautiousBounds& bounds) {
  TrustInterval t;
  t.omega_l = bounds.omega_l;
  t.omega_u = bounds.omega_u;
  t.lower = bounds.omega_l;
  t.upper = bb.rho > 0.0
                ? bounds.omega_u
                : std::min(bounds.omega_u, std::max(bounds.omega_l, bb.tau_g));
  return t;
}

TrustInterval restrict_interval(const TrustInterval& interval,
                                BoundChoice choice, const BBScalars& bb) {
  double a = interval.omega_l;
  double b = interval.omega_u;
  const double abs_z = bb.tau_z ? std::abs(*bb.tau_z) : interval.omega_u;
  switch (choice) {
    case BoundChoice::Full:
      return interval;
    case BoundChoice::UpperZ:
      b = std::min(abs_z, interval.omega_u);
      break;
    case BoundChoice::BBBand:
      a = std::max(std::abs(bb.tau_s), interval.omega_l);
      b = std::min(abs_z, interval.omega_u);
      break;
  }
  TrustInterval r = interval;
  r.lower = std::max(interval.lower, a);
  r.upper = std::min(interval.upper, b);
  if (r.lower > r.upper) {
    // [a, b] lies entirely on one side of T.
    const double p = a > interval.upper ? interval.upper : interval.lower;
    r.lower = p;
    r.upper = p;
  }
  return r;
}

Vector build_diagonal_seed(const Vector& s, const Vector& z,
                           const TrustInterval& t_hat, DiagonalFormula formula,
                           const Vector& prev_diag) {
  if (s.size() != z.size() || s.size() != prev_diag.size()) {
    throw std::invalid_argument("build_diagonal_seed: dimension mismatch");
  }
  Vector gamma(s.size());
  for (Index j = 0; j < s.size(); ++j) {
    if (s[j] != 0.0) {
      double ratio = z[j] / s[j];
      if (formula == DiagonalFormula::Dg) ratio = std::abs(ratio);
      gamma[j] = t_hat.clamp(ratio);
    } else {
      gamma[j] = t_hat.clamp(prev_diag[j]);
    }
  }
  return gamma;
}

}  // namespace rose

#pragma once

#include <limits>
#include <optional>

#include "rose/operators.hpp"

namespace rose {

// Barzilai-Borwein type scalars for a structured secant pair (s, z).
//
//   tau_s = z's / |s|^2,  tau_g = |z| / |s|,  tau_z = |z|^2 / z's.
//
// They are the least-squares fits of tau * s to z in three different
// norms, and for z's > 0 they are ordered 0 < tau_s <= tau_g <= tau_z.
// tau_z only exists when z's != 0.
struct BBScalars {
  double tau_s = 0.0;
  double tau_g = 0.0;
  std::optional<double> tau_z;
  double rho = 0.0;  // z's
};

// Throws std::invalid_argument if s == 0 or the sizes differ.
BBScalars bb_scalars(const Vector& s, const Vector& z);

// Constants of the gradient dependent safeguards. C0 may be +infinity.
struct CautiousParams {
  double c0 = 1e-6;
  double C0 = 1e6;
  double c1 = 1e-6;
  double c2 = 1.0;
};

struct CautiousBounds {
  double omega_l = 0.0;
  double omega_u = std::numeric_limits<double>::infinity();
};

// omega_l = min(c0, c1 |g|^c2),  omega_u = max(C0, 1 / (c1 |g|^c2)).
// |g| = 0 yields (0, +inf).
CautiousBounds cautious_bounds(double grad_norm, const CautiousParams& params);

// Admissible range [lower, upper] for the spectrum of the diagonal seed
// part, together with the cautious bounds it was derived from.
struct TrustInterval {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double omega_l = 0.0;
  double omega_u = std::numeric_limits<double>::infinity();

  double clamp(double t) const;
  bool contains(double t) const { return lower <= t && t <= upper; }
};

// [omega_l, omega_u] when rho > 0, else [omega_l, P(tau_g)] with P the
// projection onto [omega_l, omega_u].
TrustInterval trust_interval(const BBScalars& bb, const CautiousBounds& bounds);

enum class DiagonalFormula {
  Ds,  // z_j / s_j, least-squares fit of D s to z
  Dg,  // |z_j / s_j|, fit of D^1/2 s to D^-1/2 z
};

// Which sub-interval [a, b] is intersected with T.
enum class BoundChoice {
  Full,    // [omega_l, omega_u]
  UpperZ,  // [omega_l, min(|tau_z|, omega_u)]
  BBBand,  // [max(|tau_s|, omega_l), min(|tau_z|, omega_u)]
};

struct DiagonalSeedVariant {
  DiagonalFormula formula = DiagonalFormula::Dg;
  BoundChoice bound_choice = BoundChoice::Full;
};

// Intersects T with the bounds of the chosen variant. An absent tau_z
// (rho == 0) leaves the upper bound at omega_u. If the intersection is
// empty the result is the endpoint of T closest to [a, b], as a singleton.
TrustInterval restrict_interval(const TrustInterval& interval,
                                BoundChoice choice, const BBScalars& bb);

// Diagonal entries of the seed part D_{k+1}. Coordinate j uses the ratio
// z_j / s_j (or its absolute value) projected onto T_hat; coordinates with
// s_j == 0 carry prev_diag[j] forward, projected onto T_hat.
Vector build_diagonal_seed(const Vector& s, const Vector& z,
                           const TrustInterval& t_hat, DiagonalFormula formula,
                           const Vector& prev_diag);

}  // namespace rose

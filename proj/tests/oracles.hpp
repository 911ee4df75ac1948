#pragma once

// Dense reference computations used only by the test suites. Nothing here
// calls into the code paths it is used to check, apart from the operator
// apply() used to densify an operator column by column.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rose/operators.hpp"

namespace rose::oracle {

using Matrix = Eigen::MatrixXd;

inline std::uint64_t test_seed() {
  if (const char* env = std::getenv("ROSE_TEST_SEED")) {
    return std::stoull(env);
  }
  return 20241017ULL;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(test_seed());
  return gen;
}

inline Vector random_vector(Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng());
  return v;
}

inline double log_uniform(double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng()));
}

inline Index random_index(Index lo, Index hi) {
  std::uniform_int_distribution<Index> u(lo, hi);
  return u(rng());
}

// Q diag(lambda) Q' with eigenvalues log-uniform in [lo, hi].
inline Matrix random_spd(Index n, double lo = 0.1, double hi = 10.0) {
  Matrix a = Matrix::NullaryExpr(n, n, [] {
    std::normal_distribution<double> g;
    return g(rng());
  });
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Vector lambda(n);
  for (Index i = 0; i < n; ++i) lambda[i] = log_uniform(lo, hi);
  const Matrix a_spd = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (a_spd + a_spd.transpose());
}

// Column j is op * e_j.
inline Matrix densify(const SymmetricOperator& op) {
  const Index n = op.dim();
  Matrix m(n, n);
  for (Index j = 0; j < n; ++j) m.col(j) = op.apply(Vector::Unit(n, j));
  return m;
}

inline Vector eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// B^{(j+1)} = B^{(j)} + y y'/(y's) - B s s' B/(s' B s), applied in order.
inline Matrix bfgs_recursion(Matrix b, const std::vector<Vector>& s,
                             const std::vector<Vector>& y) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vector bs = b * s[i];
    b += y[i] * y[i].transpose() / y[i].dot(s[i]) -
         bs * bs.transpose() / s[i].dot(bs);
  }
  return b;
}

inline double rel_err(const Vector& a, const Vector& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

}  // namespace rose::oracle

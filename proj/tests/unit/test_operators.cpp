#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "rose/operators.hpp"

using namespace rose;
using oracle::Matrix;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SparseMatrix random_sparse_symmetric(Index n, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix dense = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      if (i == j || u(oracle::rng()) < density) {
        dense(i, j) = dense(j, i) = u(oracle::rng()) * 2.0 - 1.0;
      }
    }
  }
  return dense.sparseView().pruned();
}

std::vector<SymmetricOperator> sample_operators(Index n) {
  std::vector<SymmetricOperator> ops;
  ops.push_back(SymmetricOperator::diagonal(oracle::random_vector(n)));
  ops.push_back(SymmetricOperator::scaled_identity(2.75, n));
  ops.push_back(SymmetricOperator::sparse(random_sparse_symmetric(n, 0.2)));
  ops.push_back(SymmetricOperator::sum(
      SymmetricOperator::diagonal(oracle::random_vector(n, 0.0, 3.0)),
      SymmetricOperator::sum(SymmetricOperator::scaled_identity(0.5, n),
                             SymmetricOperator::sparse(random_sparse_symmetric(n, 0.1)))));
  return ops;
}

}  // namespace

TEST_CASE("apply examples") {
  CHECK(apply(SymmetricOperator::diagonal(vec({2, 3})), vec({1, 1})) == vec({2, 3}));
  CHECK(apply(SymmetricOperator::scaled_identity(1.0, 3), vec({4, 5, 6})) ==
        vec({4, 5, 6}));
  const auto sum = SymmetricOperator::diagonal(vec({1, 1})) +
                   SymmetricOperator::scaled_identity(2.0, 2);
  CHECK(apply(sum, vec({1, 0})) == vec({3, 0}));
}

TEST_CASE("apply rejects dimension mismatch") {
  const auto op = SymmetricOperator::diagonal(vec({1, 2, 3}));
  CHECK_THROWS_AS(op.apply(vec({1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricOperator::sum(op, SymmetricOperator::scaled_identity(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("constructors reject bad input") {
  CHECK_THROWS_AS(SymmetricOperator::diagonal(vec({1, NAN})), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricOperator::diagonal(vec({INFINITY})), std::invalid_argument);
  Matrix asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK_THROWS_AS(SymmetricOperator::sparse(asym.sparseView()), std::invalid_argument);
  Matrix nonsym_values(2, 2);
  nonsym_values << 1, 2, 3, 1;
  CHECK_THROWS_AS(SymmetricOperator::sparse(nonsym_values.sparseView()),
                  std::invalid_argument);
}

TEST_CASE("diagonal_of examples") {
  CHECK(diagonal_of(SymmetricOperator::scaled_identity(2.5, 2)) == vec({2.5, 2.5}));
  CHECK(diagonal_of(SymmetricOperator::diagonal(vec({1, 2})) +
                    SymmetricOperator::scaled_identity(1.0, 2)) == vec({2, 3}));
  Matrix m(2, 2);
  m << 4, -1, -1, 4;
  CHECK(diagonal_of(SymmetricOperator::sparse(m.sparseView())) == vec({4, 4}));
}

TEST_CASE("five_point_laplacian examples") {
  const auto l1 = five_point_laplacian(1);
  CHECK(l1.dim() == 1);
  CHECK(oracle::densify(l1)(0, 0) == 4.0);

  Matrix expected(4, 4);
  // nodes (0,0) (0,1) (1,0) (1,1)
  expected << 4, -1, -1, 0,
             -1, 4, 0, -1,
             -1, 0, 4, -1,
              0, -1, -1, 4;
  CHECK(oracle::densify(five_point_laplacian(2)) == expected);

  CHECK(oracle::eigenvalues(oracle::densify(five_point_laplacian(4)))[0] > 0.0);
  CHECK_THROWS_AS(five_point_laplacian(0), std::invalid_argument);
}

TEST_CASE("laplacian stencil scale multiplies every entry") {
  const Matrix a = oracle::densify(five_point_laplacian(3));
  const Matrix b = oracle::densify(five_point_laplacian(3, 16.0));
  CHECK((b - 16.0 * a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian is SPD for m = 1..8") {
  for (Index m = 1; m <= 8; ++m) {
    CAPTURE(m);
    const Matrix l = oracle::densify(five_point_laplacian(m));
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(oracle::eigenvalues(l)[0] > 0.0);
  }
}

TEST_CASE("linearity and symmetry on random vectors") {
  for (Index n : {1, 5, 17, 64}) {
    for (const auto& op : sample_operators(n)) {
      for (int trial = 0; trial < 5; ++trial) {
        const Vector u = oracle::random_vector(n);
        const Vector v = oracle::random_vector(n);
        const double a = 1.7, b = -0.3;
        const Vector lhs = op.apply(a * u + b * v);
        const Vector rhs = a * op.apply(u) + b * op.apply(v);
        CHECK((lhs - rhs).norm() <= 1e-14 * (1.0 + rhs.norm()));
        const double uv = u.dot(op.apply(v));
        const double vu = v.dot(op.apply(u));
        CHECK(std::abs(uv - vu) <= 1e-12 * std::max(1.0, std::abs(uv)));
      }
    }
  }
}

TEST_CASE("apply agrees with an independently built dense matrix") {
  const Index n = 40;
  const Vector d = oracle::random_vector(n);
  const SparseMatrix sp = random_sparse_symmetric(n, 0.15);
  const Matrix dense = Matrix(d.asDiagonal()) + 0.5 * Matrix::Identity(n, n) +
                       Matrix(sp);
  const auto op = SymmetricOperator::diagonal(d) +
                  (SymmetricOperator::scaled_identity(0.5, n) +
                   SymmetricOperator::sparse(sp));
  for (int trial = 0; trial < 10; ++trial) {
    const Vector v = oracle::random_vector(n);
    CHECK(oracle::rel_err(op.apply(v), dense * v) <= 1e-13);
  }
  CHECK((Matrix(op.assemble()) - dense).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("diagonal_of matches e_i' A e_i") {
  for (Index n : {3, 16, 64}) {
    for (const auto& op : sample_operators(n)) {
      const Vector diag = diagonal_of(op);
      for (Index i = 0; i < n; ++i) {
        CHECK(diag[i] == doctest::Approx(op.apply(Vector::Unit(n, i))[i]).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("apply_add accumulates") {
  const auto op = five_point_laplacian(3);
  const Vector v = oracle::random_vector(9);
  Vector out = Vector::Ones(9);
  op.apply_add(v, out);
  CHECK(oracle::rel_err(out, Vector::Ones(9) + op.apply(v)) <= 1e-15);
}

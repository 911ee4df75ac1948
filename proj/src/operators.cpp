#include "rose/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace rose {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dim(Index expected, Index actual, const char* what) {
  if (expected != actual) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(actual) + " vs " +
                                std::to_string(expected) + ")");
  }
}

}  // namespace

SymmetricOperator SymmetricOperator::diagonal(Vector entries) {
  if (!entries.allFinite()) {
    throw std::invalid_argument("diagonal operator entries must be finite");
  }
  const Index n = entries.size();
  return SymmetricOperator(Diagonal{std::move(entries)}, n);
}

SymmetricOperator SymmetricOperator::scaled_identity(double tau, Index n) {
  if (n < 0 || !std::isfinite(tau)) {
    throw std::invalid_argument("scaled identity needs n >= 0 and finite tau");
  }
  return SymmetricOperator(ScaledIdentity{tau}, n);
}

SymmetricOperator SymmetricOperator::sparse(SparseMatrix matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("sparse operator must be square");
  }
  matrix.makeCompressed();
  // Structural and numerical symmetry: every stored (i, j) has a stored
  // (j, i) with the same value.
  for (Index i = 0; i < matrix.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(matrix, i); it; ++it) {
      if (!std::isfinite(it.value())) {
        throw std::invalid_argument("sparse operator entries must be finite");
      }
      if (it.col() == i) continue;
      bool found = false;
      for (SparseMatrix::InnerIterator jt(matrix, it.col()); jt; ++jt) {
        if (jt.col() == i) {
          found = jt.value() == it.value();
          break;
        }
      }
      if (!found) {
        throw std::invalid_argument("sparse operator is not symmetric at (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(it.col()) + ")");
      }
    }
  }
  const Index n = matrix.rows();
  return SymmetricOperator(Sparse{std::move(matrix)}, n);
}

SymmetricOperator SymmetricOperator::sum(SymmetricOperator left,
                                         SymmetricOperator right) {
  check_dim(left.dim(), right.dim(), "sum operator");
  const Index n = left.dim();
  return SymmetricOperator(
      Sum{std::make_shared<const SymmetricOperator>(std::move(left)),
          std::make_shared<const SymmetricOperator>(std::move(right))},
      n);
}

SymmetricOperator::Kind SymmetricOperator::kind() const {
  return static_cast<Kind>(storage_.index());
}

Vector SymmetricOperator::apply(const Vector& v) const {
  check_dim(dim_, v.size(), "apply");
  Vector out = Vector::Zero(dim_);
  apply_add(v, out);
  return out;
}

void SymmetricOperator::apply_add(const Vector& v, Vector& out) const {
  std::visit(Overloaded{
                 [&](const Diagonal& d) { out += d.entries.cwiseProduct(v); },
                 [&](const ScaledIdentity& s) { out += s.tau * v; },
                 [&](const Sparse& s) { out += s.matrix * v; },
                 [&](const Sum& s) {
                   s.left->apply_add(v, out);
                   s.right->apply_add(v, out);
                 },
             },
             storage_);
}

Vector SymmetricOperator::diagonal() const {
  return std::visit(
      Overloaded{
          [&](const Diagonal& d) -> Vector { return d.entries; },
          [&](const ScaledIdentity& s) -> Vector {
            return Vector::Constant(dim_, s.tau);
          },
          [&](const Sparse& s) -> Vector { return s.matrix.diagonal(); },
          [&](const Sum& s) -> Vector {
            return s.left->diagonal() + s.right->diagonal();
          },
      },
      storage_);
}

SparseMatrix SymmetricOperator::assemble() const {
  return std::visit(
      Overloaded{
          [&](const Diagonal& d) -> SparseMatrix {
            SparseMatrix m(dim_, dim_);
            std::vector<Eigen::Triplet<double>> t;
            t.reserve(static_cast<std::size_t>(dim_));
            for (Index i = 0; i < dim_; ++i) t.emplace_back(i, i, d.entries[i]);
            m.setFromTriplets(t.begin(), t.end());
            return m;
          },
          [&](const ScaledIdentity& s) -> SparseMatrix {
            SparseMatrix m(dim_, dim_);
            m.setIdentity();
            return s.tau * m;
          },
          [&](const Sparse& s) -> SparseMatrix { return s.matrix; },
          [&](const Sum& s) -> SparseMatrix {
            return SparseMatrix(s.left->assemble() + s.right->assemble());
          },
      },
      storage_);
}

const SymmetricOperator& SymmetricOperator::left() const {
  return *std::get<Sum>(storage_).left;
}

const SymmetricOperator& SymmetricOperator::right() const {
  return *std::get<Sum>(storage_).right;
}

double SymmetricOperator::scale() const {
  return std::get<ScaledIdentity>(storage_).tau;
}

SymmetricOperator five_point_laplacian(Index m, double scale) {
  if (m < 1) {
    throw std::invalid_argument("five_point_laplacian: grid side must be >= 1");
  }
  const Index n = m * m;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(5 * n));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      const Index row = i * m + j;
      t.emplace_back(row, row, 4.0 * scale);
      if (i > 0) t.emplace_back(row, row - m, -scale);
      if (i + 1 < m) t.emplace_back(row, row + m, -scale);
      if (j > 0) t.emplace_back(row, row - 1, -scale);
      if (j + 1 < m) t.emplace_back(row, row + 1, -scale);
    }
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return SymmetricOperator::sparse(std::move(a));
}

}  // namespace rose

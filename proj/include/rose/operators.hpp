#pragma once

#include <memory>
#include <variant>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace rose {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Matrix-free symmetric linear map. One of: a diagonal, a scaled identity,
// a sparse symmetric matrix, or the sum of two operators.
//
// Instances are immutable and cheap to copy (children of a sum are shared),
// so they can be applied concurrently from any number of threads.
class SymmetricOperator {
 public:
  enum class Kind { Diagonal, ScaledIdentity, Sparse, Sum };

  // Entries must be finite.
  static SymmetricOperator diagonal(Vector entries);
  static SymmetricOperator scaled_identity(double tau, Index n);
  // The matrix must be square with a structurally symmetric pattern and
  // symmetric values.
  static SymmetricOperator sparse(SparseMatrix matrix);
  static SymmetricOperator sum(SymmetricOperator left, SymmetricOperator right);

  Kind kind() const;
  Index dim() const { return dim_; }

  // Throws std::invalid_argument when v.size() != dim().
  Vector apply(const Vector& v) const;
  // out += this * v, no dimension checks.
  void apply_add(const Vector& v, Vector& out) const;

  Vector diagonal() const;

  // Explicit sparse form, used for exact (direct) solves.
  SparseMatrix assemble() const;

  // Children of a Sum. Undefined for other kinds.
  const SymmetricOperator& left() const;
  const SymmetricOperator& right() const;
  // Scale of a ScaledIdentity. Undefined for other kinds.
  double scale() const;

 private:
  struct Diagonal {
    Vector entries;
  };
  struct ScaledIdentity {
    double tau;
  };
  struct Sparse {
    SparseMatrix matrix;
  };
  struct Sum {
    std::shared_ptr<const SymmetricOperator> left;
    std::shared_ptr<const SymmetricOperator> right;
  };
  using Storage = std::variant<Diagonal, ScaledIdentity, Sparse, Sum>;

  SymmetricOperator(Storage storage, Index dim)
      : storage_(std::move(storage)), dim_(dim) {}

  Storage storage_;
  Index dim_;
};

inline SymmetricOperator operator+(SymmetricOperator a, SymmetricOperator b) {
  return SymmetricOperator::sum(std::move(a), std::move(b));
}

inline Vector apply(const SymmetricOperator& op, const Vector& v) {
  return op.apply(v);
}

inline Vector diagonal_of(const SymmetricOperator& op) {
  return op.diagonal();
}

// Five-point finite-difference Laplacian on an m x m grid of interior nodes
// with zero Dirichlet boundary. Node (i, j) maps to row i * m + j. Every row
// carries 4 * scale on the diagonal and -scale for each grid neighbor.
// scale = 1 gives the unscaled stencil, scale = (m + 1)^2 the h^-2 one.
SymmetricOperator five_point_laplacian(Index m, double scale = 1.0);

}  // namespace rose

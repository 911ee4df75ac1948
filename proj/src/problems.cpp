#include "rose/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace rose {

namespace {

Eigen::MatrixXd densify(const SymmetricOperator& op) {
  return Eigen::MatrixXd(op.assemble());
}

void check_size(const StructuredObjective& f, const Vector& x) {
  if (x.size() != f.dim()) {
    throw std::invalid_argument("objective: dimension mismatch");
  }
}

}  // namespace

QuadraticObjective::QuadraticObjective(SymmetricOperator data_hessian,
                                       SymmetricOperator regularizer_hessian,
                                       Vector minimizer)
    : data_(data_hessian),
      reg_(regularizer_hessian),
      full_(SymmetricOperator::sum(std::move(data_hessian),
                                   std::move(regularizer_hessian))),
      minimizer_(std::move(minimizer)) {
  if (full_.dim() != minimizer_.size()) {
    throw std::invalid_argument("QuadraticObjective: dimension mismatch");
  }
}

double QuadraticObjective::value(const Vector& x) const {
  check_size(*this, x);
  const Vector e = x - minimizer_;
  return 0.5 * e.dot(full_.apply(e));
}

Vector QuadraticObjective::gradient(const Vector& x) const {
  check_size(*this, x);
  return full_.apply(x - minimizer_);
}

SymmetricOperator QuadraticObjective::regularizer_hessian(const Vector&) const {
  return reg_;
}

std::optional<Eigen::MatrixXd> QuadraticObjective::exact_full_hessian(
    const Vector&) const {
  return densify(full_);
}

QuadraticObjective make_quadratic_benchmark(double alpha,
                                            double stencil_scale,
                                            int first_exponent) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("make_quadratic_benchmark: alpha must be >= 0");
  }
  constexpr Index kSide = 4;
  constexpr Index kDim = kSide * kSide;
  Vector d(kDim);
  for (Index j = 0; j < kDim; ++j) {
    d[j] = std::exp(-static_cast<double>(j + first_exponent));
  }
  const SparseMatrix lap = five_point_laplacian(kSide, stencil_scale).assemble();
  return QuadraticObjective(SymmetricOperator::diagonal(std::move(d)),
                            SymmetricOperator::sparse(alpha * lap),
                            Vector::Ones(kDim));
}

ToyNonconvexObjective::ToyNonconvexObjective(Index n, double alpha)
    : weights_(n),
      reg_(SymmetricOperator::scaled_identity(0.0, 0)) {
  const auto m = static_cast<Index>(std::llround(std::sqrt(double(n))));
  if (n < 1 || m * m != n) {
    throw std::invalid_argument("make_toy_nonconvex: n must be a perfect square");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("make_toy_nonconvex: alpha must be > 0");
  }
  for (Index i = 0; i < n; ++i) {
    weights_[i] = 1.0 + static_cast<double>(i + 1) / static_cast<double>(n);
  }
  reg_ = SymmetricOperator::sparse(alpha * five_point_laplacian(m).assemble());
}

double ToyNonconvexObjective::value(const Vector& x) const {
  check_size(*this, x);
  const double data =
      weights_.dot((Vector::Ones(x.size()) - x.array().cos().matrix()));
  return data + 0.5 * x.dot(reg_.apply(x));
}

Vector ToyNonconvexObjective::gradient(const Vector& x) const {
  check_size(*this, x);
  return weights_.cwiseProduct(x.array().sin().matrix()) + reg_.apply(x);
}

SymmetricOperator ToyNonconvexObjective::regularizer_hessian(
    const Vector&) const {
  return reg_;
}

std::optional<Eigen::MatrixXd> ToyNonconvexObjective::exact_full_hessian(
    const Vector& x) const {
  Eigen::MatrixXd h = densify(reg_);
  h.diagonal() += weights_.cwiseProduct(x.array().cos().matrix());
  return h;
}

ToyNonconvexObjective make_toy_nonconvex(Index n, double alpha) {
  return ToyNonconvexObjective(n, alpha);
}

CallbackObjective::CallbackObjective(Index n, ValueFn value_fn,
                                     GradientFn gradient_fn,
                                     HessianFn hessian_fn)
    : n_(n),
      value_fn_(std::move(value_fn)),
      gradient_fn_(std::move(gradient_fn)),
      hessian_fn_(std::move(hessian_fn)) {
  if (!value_fn_ || !gradient_fn_) {
    throw std::invalid_argument("CallbackObjective: value and gradient required");
  }
}

SymmetricOperator CallbackObjective::regularizer_hessian(const Vector& x) const {
  if (!hessian_fn_) return SymmetricOperator::scaled_identity(0.0, n_);
  return hessian_fn_(x);
}

}  // namespace rose

#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "rose/operators.hpp"

namespace rose {

// Objective of the form J = D + S, where the regularizer S has a cheap
// positive semi-definite Hessian approximation and the data term D does not.
class StructuredObjective {
 public:
  virtual ~StructuredObjective() = default;

  virtual Index dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  // Positive semi-definite approximation of the regularizer Hessian at x.
  virtual SymmetricOperator regularizer_hessian(const Vector& x) const = 0;
  // Dense Hessian of J, for test oracles only.
  virtual std::optional<Eigen::MatrixXd> exact_full_hessian(
      const Vector& /*x*/) const {
    return std::nullopt;
  }
};

// J(x) = 1/2 (x - x*)' (H_data + H_reg) (x - x*) with the regularizer
// Hessian approximation fixed to H_reg.
class QuadraticObjective final : public StructuredObjective {
 public:
  QuadraticObjective(SymmetricOperator data_hessian,
                     SymmetricOperator regularizer_hessian, Vector minimizer);

  Index dim() const override { return minimizer_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  SymmetricOperator regularizer_hessian(const Vector& x) const override;
  std::optional<Eigen::MatrixXd> exact_full_hessian(
      const Vector& x) const override;

  const SymmetricOperator& data_hessian() const { return data_; }
  const SymmetricOperator& hessian() const { return full_; }
  const Vector& minimizer() const { return minimizer_; }

 private:
  SymmetricOperator data_;
  SymmetricOperator reg_;
  SymmetricOperator full_;
  Vector minimizer_;
};

// n = 16 benchmark: data Hessian diag(exp(-j)) for j = first_exponent, ...,
// first_exponent + 15, regularizer alpha times the five-point Laplacian on a
// 4 x 4 grid, minimizer ones(16). The default first_exponent = 0 gives
// diag(1, e^-1, ..., e^-15); first_exponent = 1 gives diag(e^-1, ..., e^-16).
// Both have condition number e^15.
QuadraticObjective make_quadratic_benchmark(double alpha,
                                            double stencil_scale = 1.0,
                                            int first_exponent = 0);

// Non-convex test problem on an m x m grid (n = m^2):
//
//   J(x) = sum_i w_i (1 - cos(x_i)) + alpha/2 x' L x,  w_i = 1 + i/n,
//
// i = 1..n, L the five-point Laplacian. The regularizer Hessian is alpha L.
class ToyNonconvexObjective final : public StructuredObjective {
 public:
  ToyNonconvexObjective(Index n, double alpha);

  Index dim() const override { return weights_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  SymmetricOperator regularizer_hessian(const Vector& x) const override;
  std::optional<Eigen::MatrixXd> exact_full_hessian(
      const Vector& x) const override;

  const Vector& weights() const { return weights_; }

 private:
  Vector weights_;
  SymmetricOperator reg_;
};

ToyNonconvexObjective make_toy_nonconvex(Index n, double alpha);

// Objective assembled from callables; used by the Python bindings and for
// ad hoc problems in tests.
class CallbackObjective final : public StructuredObjective {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<SymmetricOperator(const Vector&)>;

  // A missing hessian_fn means S_k = 0.
  CallbackObjective(Index n, ValueFn value_fn, GradientFn gradient_fn,
                    HessianFn hessian_fn = {});

  Index dim() const override { return n_; }
  double value(const Vector& x) const override { return value_fn_(x); }
  Vector gradient(const Vector& x) const override { return gradient_fn_(x); }
  SymmetricOperator regularizer_hessian(const Vector& x) const override;

 private:
  Index n_;
  ValueFn value_fn_;
  GradientFn gradient_fn_;
  HessianFn hessian_fn_;
};

}  // namespace rose

#pragma once

#include <functional>

#include "psaga/problem.hpp"
#include "psaga/prox.hpp"

namespace psaga {

/// f(x) = 1/2 x'Ax + b'x + c with A symmetric positive semidefinite.
/// The eigendecomposition of A is computed once so each prox costs O(d^2).
class QuadraticComponent final : public ComponentFunction {
 public:
  QuadraticComponent(Eigen::MatrixXd A, Eigen::VectorXd b, double c = 0.0);

  /// f(x) = 1/2 (x - center)' A (x - center)
  static QuadraticComponent centered(const Eigen::MatrixXd& A, const Eigen::VectorXd& center);

  std::size_t dim() const override { return static_cast<std::size_t>(A_.rows()); }
  double value(cspan x) const override;
  void gradient(cspan x, mspan out) const override;
  ProxResult prox(double gamma, cspan z) const override;
  bool analytic() const override { return true; }
  std::optional<QuadraticForm> quadratic_form() const override { return QuadraticForm{A_, b_, c_}; }

  using ComponentFunction::gradient;

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  double c_;
  Eigen::MatrixXd eigvecs_;
  Eigen::VectorXd eigvals_;
};

/// f(x) = 1/2 (a'x - y)^2 + mu_reg/2 ||x||^2
class RidgeComponent final : public ComponentFunction {
 public:
  RidgeComponent(Vector a, double y, double mu_reg);

  std::size_t dim() const override { return a_.size(); }
  double value(cspan x) const override;
  void gradient(cspan x, mspan out) const override;
  ProxResult prox(double gamma, cspan z) const override;
  bool analytic() const override { return true; }
  std::optional<QuadraticForm> quadratic_form() const override;

  using ComponentFunction::gradient;

  const Vector& row() const { return a_; }
  double label() const { return y_; }

 private:
  Vector a_;
  double y_;
  double mu_reg_;
};

/// f(x) = log(1 + exp(-y a'x)) + mu_reg/2 ||x||^2, y in {-1, +1}
class LogisticRidgeComponent final : public ComponentFunction {
 public:
  LogisticRidgeComponent(Vector a, double y, double mu_reg, double tol = kTolProx);

  std::size_t dim() const override { return a_.size(); }
  double value(cspan x) const override;
  void gradient(cspan x, mspan out) const override;
  ProxResult prox(double gamma, cspan z) const override;
  bool analytic() const override { return false; }

  using ComponentFunction::gradient;

  const Vector& row() const { return a_; }
  double label() const { return y_; }

 private:
  Vector a_;
  double y_;
  double mu_reg_;
  double tol_;
};

/// A component given only by value and gradient callbacks; its prox is
/// computed by prox_generic using the declared constants.
class SmoothComponent final : public ComponentFunction {
 public:
  using ValueFn = std::function<double(cspan)>;
  using GradientFn = std::function<void(cspan, mspan)>;

  SmoothComponent(std::size_t dim, ValueFn value, GradientFn gradient, double mu, double L,
                  double tol = kTolProx);

  std::size_t dim() const override { return dim_; }
  double value(cspan x) const override { return value_(x); }
  void gradient(cspan x, mspan out) const override { gradient_(x, out); }
  ProxResult prox(double gamma, cspan z) const override;
  bool analytic() const override { return false; }

  using ComponentFunction::gradient;

 private:
  std::size_t dim_;
  ValueFn value_;
  GradientFn gradient_;
  double mu_;
  double L_;
  double tol_;
};

/// Numerically stable logistic sigmoid 1 / (1 + exp(-t)).
double sigmoid(double t);

}  // namespace psaga

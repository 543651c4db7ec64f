#include "psaga/components.hpp"

#include <cmath>
#include <string>

#include "psaga/error.hpp"
#include "psaga/kernels.hpp"

namespace psaga {

QuadraticComponent::QuadraticComponent(Eigen::MatrixXd A, Eigen::VectorXd b, double c)
    : A_(std::move(A)), b_(std::move(b)), c_(c) {
  if (A_.rows() != A_.cols() || A_.rows() != b_.size() || A_.rows() == 0)
    fail(Errc::dimension_mismatch, "quadratic needs square A matching b");
  A_ = 0.5 * (A_ + A_.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A_);
  eigvecs_ = eig.eigenvectors();
  eigvals_ = eig.eigenvalues();
}

QuadraticComponent QuadraticComponent::centered(const Eigen::MatrixXd& A,
                                                const Eigen::VectorXd& center) {
  const Eigen::VectorXd Ac = A * center;
  return QuadraticComponent(A, -Ac, 0.5 * center.dot(Ac));
}

double QuadraticComponent::value(cspan x) const {
  const auto v = as_eigen(x);
  return 0.5 * v.dot(A_ * v) + b_.dot(v) + c_;
}

void QuadraticComponent::gradient(cspan x, mspan out) const {
  as_eigen(out) = A_ * as_eigen(x) + b_;
}

ProxResult QuadraticComponent::prox(double gamma, cspan z) const {
  if (!(gamma > 0.0)) fail(Errc::invalid_constants, "stepsize must be positive");
  if (z.size() != dim()) fail(Errc::dimension_mismatch, "prox input dimension");
  const Eigen::ArrayXd denom = 1.0 + gamma * eigvals_.array();
  if ((denom <= 0.0).any()) fail(Errc::singular_system, "I + gamma A is not positive definite");

  ProxResult out;
  out.point.resize(dim());
  const Eigen::VectorXd rhs = as_eigen(z) - gamma * b_;
  const Eigen::VectorXd coords = (eigvecs_.transpose() * rhs).array() / denom;
  as_eigen(mspan(out.point)) = eigvecs_ * coords;
  const Eigen::VectorXd defect =
      as_eigen(cspan(out.point)) + gamma * (A_ * as_eigen(cspan(out.point)) + b_) - as_eigen(z);
  out.residual = defect.norm();
  return out;
}

RidgeComponent::RidgeComponent(Vector a, double y, double mu_reg)
    : a_(std::move(a)), y_(y), mu_reg_(mu_reg) {
  if (a_.empty()) fail(Errc::dimension_mismatch, "empty row");
  if (!(mu_reg_ >= 0.0)) fail(Errc::invalid_constants, "negative ridge weight");
}

double RidgeComponent::value(cspan x) const {
  const double r = kernels::dot(a_, x) - y_;
  return 0.5 * r * r + 0.5 * mu_reg_ * kernels::squared_norm(x);
}

void RidgeComponent::gradient(cspan x, mspan out) const {
  const double r = kernels::dot(a_, x) - y_;
  for (std::size_t k = 0; k < a_.size(); ++k) out[k] = r * a_[k] + mu_reg_ * x[k];
}

ProxResult RidgeComponent::prox(double gamma, cspan z) const {
  return prox_rank_one_quadratic(a_, y_, mu_reg_, gamma, z);
}

std::optional<QuadraticForm> RidgeComponent::quadratic_form() const {
  const auto a = as_eigen(cspan(a_));
  const auto d = static_cast<Eigen::Index>(a_.size());
  QuadraticForm q;
  q.A = a * a.transpose() + mu_reg_ * Eigen::MatrixXd::Identity(d, d);
  q.b = -y_ * a;
  q.c = 0.5 * y_ * y_;
  return q;
}

LogisticRidgeComponent::LogisticRidgeComponent(Vector a, double y, double mu_reg, double tol)
    : a_(std::move(a)), y_(y), mu_reg_(mu_reg), tol_(tol) {
  if (a_.empty()) fail(Errc::dimension_mismatch, "empty row");
  if (y_ != 1.0 && y_ != -1.0)
    fail(Errc::invalid_constants, "logistic label must be +1 or -1, got " + std::to_string(y_));
  if (!(mu_reg_ >= 0.0)) fail(Errc::invalid_constants, "negative ridge weight");
}

double LogisticRidgeComponent::value(cspan x) const {
  // log(1 + exp(-m)) without overflow
  const double m = y_ * kernels::dot(a_, x);
  const double loss = m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
  return loss + 0.5 * mu_reg_ * kernels::squared_norm(x);
}

void LogisticRidgeComponent::gradient(cspan x, mspan out) const {
  const double w = -y_ * sigmoid(-y_ * kernels::dot(a_, x));
  for (std::size_t k = 0; k < a_.size(); ++k) out[k] = w * a_[k] + mu_reg_ * x[k];
}

ProxResult LogisticRidgeComponent::prox(double gamma, cspan z) const {
  return prox_logistic_ridge(a_, y_, mu_reg_, gamma, z, tol_);
}

SmoothComponent::SmoothComponent(std::size_t dim, ValueFn value, GradientFn gradient, double mu,
                                 double L, double tol)
    : dim_(dim), value_(std::move(value)), gradient_(std::move(gradient)), mu_(mu), L_(L),
      tol_(tol) {
  if (dim_ == 0) fail(Errc::dimension_mismatch, "dimension must be positive");
  if (!(mu_ > 0.0) || !(L_ >= mu_)) fail(Errc::invalid_constants, "need 0 < mu <= L");
}

ProxResult SmoothComponent::prox(double gamma, cspan z) const {
  return prox_generic(*this, mu_, L_, gamma, z, tol_);
}

}  // namespace psaga

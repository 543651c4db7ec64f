#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace psaga {

/// A point (or gradient) in R^d.
using Vector = std::vector<double>;
using cspan = std::span<const double>;
using mspan = std::span<double>;

inline Eigen::Map<const Eigen::VectorXd> as_eigen(cspan v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

inline Eigen::Map<Eigen::VectorXd> as_eigen(mspan v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

/// Output of a proximity operator x = prox_{gamma f}(z).
struct ProxResult {
  Vector point;
  /// ||x + gamma * grad f(x) - z||, the defect in the resolvent identity.
  double residual = 0.0;
  /// 0 for closed forms.
  std::size_t inner_iters = 0;
};

/// f(x) = 1/2 x'Ax + b'x + c
struct QuadraticForm {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double c = 0.0;
};

}  // namespace psaga

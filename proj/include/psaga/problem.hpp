#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "psaga/types.hpp"

namespace psaga {

/// Absolute stationarity tolerance (per component) for known solutions.
inline constexpr double kTolStar = 1e-8;

/// Oracle bundle for one smooth, strongly convex component f_i.
///
/// Implementations are immutable and their oracles are pure, so one instance
/// can be shared across threads and problems.
class ComponentFunction {
 public:
  virtual ~ComponentFunction() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(cspan x) const = 0;
  virtual void gradient(cspan x, mspan out) const = 0;
  /// prox_{gamma f}(z). Throws Error on failure of an iterative solve.
  virtual ProxResult prox(double gamma, cspan z) const = 0;
  /// True when prox is a closed form.
  virtual bool analytic() const = 0;
  /// Set for components that are exactly quadratic.
  virtual std::optional<QuadraticForm> quadratic_form() const { return std::nullopt; }

  Vector gradient(cspan x) const {
    Vector g(dim());
    gradient(x, g);
    return g;
  }
};

using ComponentPtr = std::shared_ptr<const ComponentFunction>;

/// min_x sum_i f_i(x) with every f_i mu-strongly convex and L-smooth.
class FiniteSumProblem {
 public:
  std::size_t size() const { return components_.size(); }
  std::size_t dim() const { return dim_; }
  double mu() const { return mu_; }
  double L() const { return L_; }

  const ComponentFunction& component(std::size_t i) const { return *components_[i]; }
  const std::vector<ComponentPtr>& components() const { return components_; }

  const std::optional<Vector>& known_solution() const { return known_solution_; }

  /// Returns a copy carrying x_star. Throws not_stationary when
  /// ||sum_i grad f_i(x_star)|| > n * kTolStar.
  FiniteSumProblem with_known_solution(Vector x_star) const;

 private:
  friend FiniteSumProblem assemble_problem(std::vector<ComponentPtr>, double, double,
                                           std::size_t);

  std::vector<ComponentPtr> components_;
  double mu_ = 0.0;
  double L_ = 0.0;
  std::size_t dim_ = 0;
  std::optional<Vector> known_solution_;
};

/// Validates and bundles components. Errors: empty_component_list,
/// invalid_constants (mu <= 0, L < mu, dim == 0), dimension_mismatch.
FiniteSumProblem assemble_problem(std::vector<ComponentPtr> components, double mu, double L,
                                  std::size_t dim);

/// sum_i grad f_i(x)
Vector full_gradient(const FiniteSumProblem& problem, cspan x);

}  // namespace psaga

#include "psaga/problem.hpp"

#include <cmath>
#include <string>

#include "psaga/error.hpp"
#include "psaga/kernels.hpp"

namespace psaga {

FiniteSumProblem assemble_problem(std::vector<ComponentPtr> components, double mu, double L,
                                  std::size_t dim) {
  if (components.empty()) fail(Errc::empty_component_list, "problem needs at least one component");
  if (!(mu > 0.0) || !(L >= mu) || !std::isfinite(L))
    fail(Errc::invalid_constants,
         "need 0 < mu <= L, got mu=" + std::to_string(mu) + " L=" + std::to_string(L));
  if (dim == 0) fail(Errc::invalid_constants, "dimension must be positive");
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!components[i]) fail(Errc::invalid_spec, "null component " + std::to_string(i));
    if (components[i]->dim() != dim)
      fail(Errc::dimension_mismatch, "component " + std::to_string(i) + " has dimension " +
                                         std::to_string(components[i]->dim()) + ", expected " +
                                         std::to_string(dim));
  }
  FiniteSumProblem p;
  p.components_ = std::move(components);
  p.mu_ = mu;
  p.L_ = L;
  p.dim_ = dim;
  return p;
}

FiniteSumProblem FiniteSumProblem::with_known_solution(Vector x_star) const {
  const Vector g = full_gradient(*this, x_star);
  const double norm = std::sqrt(kernels::squared_norm(g));
  if (!(norm <= static_cast<double>(size()) * kTolStar))
    fail(Errc::not_stationary, "gradient norm " + std::to_string(norm) + " at claimed solution");
  FiniteSumProblem p = *this;
  p.known_solution_ = std::move(x_star);
  return p;
}

Vector full_gradient(const FiniteSumProblem& problem, cspan x) {
  if (x.size() != problem.dim())
    fail(Errc::dimension_mismatch, "point has dimension " + std::to_string(x.size()) +
                                       ", problem has " + std::to_string(problem.dim()));
  Vector total(problem.dim(), 0.0);
  Vector g(problem.dim());
  for (const auto& f : problem.components()) {
    f->gradient(x, g);
    kernels::axpy(1.0, g, total);
  }
  return total;
}

}  // namespace psaga

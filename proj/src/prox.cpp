#include "psaga/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "psaga/components.hpp"
#include "psaga/error.hpp"
#include "psaga/kernels.hpp"

namespace psaga {
namespace {

constexpr std::size_t kLogisticBudget = 200;

void require_positive_step(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    fail(Errc::invalid_constants, "stepsize must be positive and finite, got " +
                                      std::to_string(gamma));
}

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    fail(Errc::dimension_mismatch, std::string(what) + " has dimension " + std::to_string(got) +
                                       ", expected " + std::to_string(want));
}

// ||x + gamma * grad - z||
double resolvent_defect(cspan x, double gamma, cspan grad, cspan z) {
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = x[k] + gamma * grad[k] - z[k];
    acc += r * r;
  }
  return std::sqrt(acc);
}

}  // namespace

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

ProxResult prox_quadratic(const Eigen::MatrixXd& A, cspan b, double gamma, cspan z) {
  require_positive_step(gamma);
  const auto d = static_cast<std::size_t>(A.rows());
  if (A.cols() != A.rows()) fail(Errc::dimension_mismatch, "A must be square");
  require_dim(b.size(), d, "b");
  require_dim(z.size(), d, "z");

  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(A.rows(), A.cols()) + gamma * A;
  const Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    fail(Errc::singular_system, "I + gamma A is not positive definite");

  ProxResult out;
  out.point.resize(d);
  const Eigen::VectorXd rhs = as_eigen(z) - gamma * as_eigen(b);
  as_eigen(mspan(out.point)) = llt.solve(rhs);
  const Eigen::VectorXd grad = A * as_eigen(cspan(out.point)) + as_eigen(b);
  out.residual = resolvent_defect(out.point, gamma, cspan(grad.data(), d), z);
  return out;
}

ProxResult prox_rank_one_quadratic(cspan a, double y, double mu_reg, double gamma, cspan z) {
  require_positive_step(gamma);
  require_dim(z.size(), a.size(), "z");
  const std::size_t d = a.size();
  const double c = 1.0 + gamma * mu_reg;

  // Sherman-Morrison on (c I + gamma a a') x = z + gamma y a, written through
  // the scalar a'x - y = (a'z - c y) / (c + gamma ||a||^2) to avoid the
  // cancellation of the textbook form when gamma ||a||^2 is large:
  //   x = (z - gamma (a'x - y) a) / c
  const double a_sq = kernels::squared_norm(a);
  const double offset = (kernels::dot(a, z) - c * y) / (c + gamma * a_sq);

  ProxResult out;
  out.point.assign(z.begin(), z.end());
  kernels::axpy(-gamma * offset, a, out.point);
  kernels::scale(1.0 / c, out.point);

  const double resid_scalar = kernels::dot(a, out.point) - y;
  Vector grad(d);
  for (std::size_t k = 0; k < d; ++k) grad[k] = resid_scalar * a[k] + mu_reg * out.point[k];
  out.residual = resolvent_defect(out.point, gamma, grad, z);
  return out;
}

ProxResult prox_logistic_ridge(cspan a, double y, double mu_reg, double gamma, cspan z,
                               double tol) {
  require_positive_step(gamma);
  require_dim(z.size(), a.size(), "z");
  if (y != 1.0 && y != -1.0)
    fail(Errc::invalid_constants, "logistic label must be +1 or -1, got " + std::to_string(y));
  if (!(tol > 0.0)) fail(Errc::invalid_constants, "tolerance must be positive");
  const std::size_t d = a.size();
  const double c = 1.0 + gamma * mu_reg;
  const double a_sq = kernels::squared_norm(a);
  const double az = kernels::dot(a, z);

  ProxResult out;
  auto reconstruct = [&](double u) {
    out.point.assign(z.begin(), z.end());
    kernels::axpy(gamma * y * sigmoid(-y * u), a, out.point);
    kernels::scale(1.0 / c, out.point);
  };

  if (a_sq == 0.0) {
    reconstruct(0.0);
    out.residual = prox_residual(LogisticRidgeComponent(Vector(a.begin(), a.end()), y, mu_reg),
                                 gamma, z, out.point);
    return out;
  }

  const double ga = gamma * a_sq;
  auto h = [&](double u) { return c * u - az - ga * y * sigmoid(-y * u); };
  auto dh = [&](double u) {
    const double s = sigmoid(y * u);
    return c + ga * s * (1.0 - s);
  };
  // |h| bounds the vector residual through ||r|| <= gamma ||a|| / 4 * |h| / c.
  const double scalar_tol = tol / std::max(1.0, gamma * std::sqrt(a_sq) / (4.0 * c));

  const double bound = (std::abs(az) + ga) / c;
  double lo = -bound;
  double hi = bound;
  double u = std::clamp((az + 0.5 * ga * y) / c, lo, hi);
  double dx_old = hi - lo;
  double dx = dx_old;
  std::size_t it = 0;
  for (;; ++it) {
    if (it >= kLogisticBudget)
      fail(Errc::max_inner_iterations,
           "logistic prox did not reach tolerance in " + std::to_string(kLogisticBudget) +
               " iterations");
    const double hu = h(u);
    if (std::abs(hu) <= scalar_tol) break;
    if (hu < 0.0)
      lo = u;
    else
      hi = u;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
      break;
    // Newton only when it stays in the bracket and at least halves the step
    // before last; otherwise bisect.
    const double slope = dh(u);
    const double newton = u - hu / slope;
    if (!(newton > lo && newton < hi) || std::abs(2.0 * hu) > std::abs(dx_old * slope)) {
      dx_old = dx;
      dx = 0.5 * (hi - lo);
      u = lo + dx;
    } else {
      dx_old = dx;
      dx = hu / slope;
      u = newton;
    }
  }
  reconstruct(u);
  out.inner_iters = it + 1;

  Vector grad(d);
  const double w = -y * sigmoid(-y * kernels::dot(a, out.point));
  for (std::size_t k = 0; k < d; ++k) grad[k] = w * a[k] + mu_reg * out.point[k];
  out.residual = resolvent_defect(out.point, gamma, grad, z);
  return out;
}

std::size_t prox_generic_budget(double mu, double L, double gamma, double tol) {
  const double ratio = (1.0 + gamma * L) / (1.0 + gamma * mu);
  return 10 * static_cast<std::size_t>(std::ceil(ratio * std::log(1.0 / tol)));
}

ProxResult prox_generic(const ComponentFunction& f, double mu, double L, double gamma, cspan z,
                        double tol) {
  require_positive_step(gamma);
  require_dim(z.size(), f.dim(), "z");
  if (!(mu > 0.0) || !(L >= mu)) fail(Errc::invalid_constants, "need 0 < mu <= L");
  if (!(tol > 0.0) || tol >= 1.0) fail(Errc::invalid_constants, "tolerance must be in (0, 1)");

  const std::size_t budget = prox_generic_budget(mu, L, gamma, tol);
  const std::size_t d = z.size();
  ProxResult out;
  out.point.assign(z.begin(), z.end());
  Vector grad(d);
  Vector r(d);
  // x <- x - (1 / (L + 1/gamma)) * (grad f(x) + (x - z) / gamma) = x - r / (1 + gamma L)
  const double step = 1.0 / (1.0 + gamma * L);
  for (std::size_t it = 0;; ++it) {
    f.gradient(out.point, grad);
    for (std::size_t k = 0; k < d; ++k) r[k] = out.point[k] + gamma * grad[k] - z[k];
    out.residual = std::sqrt(kernels::squared_norm(r));
    if (out.residual <= tol) {
      out.inner_iters = it;
      return out;
    }
    if (it >= budget)
      fail(Errc::max_inner_iterations, "generic prox exceeded budget of " +
                                           std::to_string(budget) + " iterations (residual " +
                                           std::to_string(out.residual) + ")");
    kernels::axpy(-step, r, out.point);
  }
}

double prox_residual(const ComponentFunction& f, double gamma, cspan z, cspan x) {
  require_dim(x.size(), f.dim(), "x");
  require_dim(z.size(), f.dim(), "z");
  const Vector g = f.gradient(x);
  return resolvent_defect(x, gamma, g, z);
}

}  // namespace psaga

#pragma once

#include "psaga/problem.hpp"
#include "psaga/types.hpp"

namespace psaga {

/// Default accuracy for iterative proxes and the resolvent-residual checks.
inline constexpr double kTolProx = 1e-10;

/// prox of f(x) = 1/2 x'Ax + b'x: solves (I + gamma A) x = z - gamma b.
/// Throws singular_system when I + gamma A is not positive definite.
ProxResult prox_quadratic(const Eigen::MatrixXd& A, cspan b, double gamma, cspan z);

/// prox of f(x) = 1/2 (a'x - y)^2 + mu_reg/2 ||x||^2 in O(d) via the
/// Sherman-Morrison inverse of (1 + gamma mu_reg) I + gamma a a'.
ProxResult prox_rank_one_quadratic(cspan a, double y, double mu_reg, double gamma, cspan z);

/// prox of f(x) = log(1 + exp(-y a'x)) + mu_reg/2 ||x||^2, y in {-1, +1}.
///
/// The optimality condition (1 + gamma mu_reg) x = z + gamma y sigma(-y a'x) a
/// pins x to the line through z along a, so the solve reduces to the scalar
/// root of h(u) = (1 + gamma mu_reg) u - a'z - gamma y ||a||^2 sigma(-y u) in
/// u = a'x. h is strictly increasing; the root lies in
/// |u| <= (|a'z| + gamma ||a||^2) / (1 + gamma mu_reg). Newton steps are taken
/// inside that bracket, with bisection whenever Newton leaves it.
/// Throws max_inner_iterations after 200 iterations.
ProxResult prox_logistic_ridge(cspan a, double y, double mu_reg, double gamma, cspan z,
                               double tol = kTolProx);

/// prox of an arbitrary mu-strongly convex, L-smooth f using only its gradient:
/// fixed-step gradient descent on f(x) + ||x - z||^2 / (2 gamma) with step
/// 1 / (L + 1/gamma), started at z, until ||x + gamma grad f(x) - z|| <= tol.
/// Throws max_inner_iterations past prox_generic_budget(...) iterations.
ProxResult prox_generic(const ComponentFunction& f, double mu, double L, double gamma, cspan z,
                        double tol = kTolProx);

/// 10 * ceil((1 + gamma L) / (1 + gamma mu) * log(1 / tol))
std::size_t prox_generic_budget(double mu, double L, double gamma, double tol);

/// ||x + gamma grad f(x) - z||
double prox_residual(const ComponentFunction& f, double gamma, cspan z, cspan x);

}  // namespace psaga

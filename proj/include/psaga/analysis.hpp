#pragma once

#include <optional>

#include "psaga/problem.hpp"
#include "psaga/solver.hpp"

namespace psaga {

/// Per-iteration contraction factor of E[Psi] and the comparison rates.
struct RateReport {
  /// 1 - 2 gamma mu L / (L + mu + 2 gamma mu L) = (L + mu) / (L + mu + 2 gamma mu L)
  double rho_prox = 0.0;
  /// 1 - 2 / (gamma (L + mu) + 2) * s / n
  double rho_sample = 0.0;
  double rho = 0.0;
  /// Earlier single-prox rate, reported when s == 1.
  std::optional<double> rho_defazio;
  /// Douglas-Rachford rate, reported when s == n.
  std::optional<double> rho_dr;
};

/// Psi(x, g) = w_x ||x - x_star||^2 + w_g sum_i ||g_i - grad f_i(x_star)||^2
struct LyapunovWeights {
  double w_x = 0.0;  // (1 + 2 gamma mu L / (L + mu)) s
  double w_g = 0.0;  // (1 + 2 / (gamma (L + mu))) gamma^2
};

struct ContractionCheck {
  /// Exact expectation of Psi after one step, averaged over every minibatch.
  double lhs = 0.0;
  /// rho * Psi(state)
  double rhs = 0.0;
  bool ok = false;
};

/// All rate functions throw invalid_constants unless gamma > 0, 1 <= s <= n
/// and 0 < mu <= L.
RateReport theoretical_rate(double gamma, std::size_t s, std::size_t n, double mu, double L);

/// sqrt(s / (L mu n))
double optimal_stepsize(std::size_t s, std::size_t n, double mu, double L);

/// log(psi0 / eps) / (1 - rho): iterations after which the geometric bound
/// drops below eps. Throws eps_not_below_psi0 when eps > psi0 or eps <= 0.
double iteration_complexity(double gamma, std::size_t s, std::size_t n, double mu, double L,
                            double psi0, double eps);

/// max{1 / (1 + gamma mu), 1 - 1 / ((gamma L + 1) n)}
double defazio_rate(double gamma, std::size_t n, double mu, double L);

/// max{1 / (1 + gamma mu), 1 - 1 / (gamma L + 1)}
double dr_rate(double gamma, double mu, double L);

LyapunovWeights lyapunov_weights(double gamma, std::size_t s, double mu, double L);

/// Psi evaluated on the state's current iterate and gradient table.
double lyapunov(const SolverState& state, const FiniteSumProblem& problem,
                const Reference& reference, double gamma, std::size_t s);

/// Builds grad_star from a known minimizer.
Reference reference_from_solution(const FiniteSumProblem& problem, cspan x_star);

/// Minimizer of sum_i f_i. When every component is quadratic the normal
/// equations are solved directly; otherwise full-gradient descent with step
/// 1/(nL) runs from 0 until ||sum_i grad f_i(x)|| <= tol.
/// Throws max_iterations past max_iters descent steps.
Reference reference_solution(const FiniteSumProblem& problem, double tol = 1e-12,
                             std::uint64_t max_iters = 10'000'000);

/// Enumerates every minibatch, applies one step from `state` for each, and
/// compares the mean Lyapunov value against rho * Psi(state). Passes when
/// lhs <= rhs + 1e-9 (1 + rhs).
ContractionCheck verify_one_step_contraction(const SolverState& state,
                                             const FiniteSumProblem& problem, double gamma,
                                             std::size_t s, const Reference& reference,
                                             Fault fault = Fault::none);

/// <g(x) - g(y), x - y> >= mu L/(L+mu) ||x-y||^2 + 1/(L+mu) ||g(x)-g(y)||^2,
/// with an absolute slack of 1e-12 (1 + ||x - y||^2).
bool check_coercivity(const ComponentFunction& f, cspan x, cspan y, double mu, double L);

}  // namespace psaga

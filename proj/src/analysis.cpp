#include "psaga/analysis.hpp"

#include <cmath>
#include <string>

#include "psaga/error.hpp"
#include "psaga/kernels.hpp"
#include "psaga/sampler.hpp"

namespace psaga {
namespace {

void check_constants(double mu, double L) {
  if (!(mu > 0.0) || !(L >= mu) || !std::isfinite(L))
    fail(Errc::invalid_constants,
         "need 0 < mu <= L, got mu=" + std::to_string(mu) + " L=" + std::to_string(L));
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    fail(Errc::invalid_constants, "stepsize must be positive, got " + std::to_string(gamma));
}

void check_batch(std::size_t s, std::size_t n) {
  if (n < 1 || s < 1 || s > n)
    fail(Errc::invalid_constants,
         "need 1 <= s <= n, got s=" + std::to_string(s) + " n=" + std::to_string(n));
}

// Both terms are evaluated in forms whose roundings coincide with the
// comparison rates when mu == L (and s == 1 or s == n), where the rates tie
// exactly.
double prox_term(double gamma, double mu, double L) {
  return (L + mu) / (L + mu + 2.0 * gamma * mu * L);
}

double sample_term(double gamma, std::size_t s, std::size_t n, double mu, double L) {
  const double batches = static_cast<double>(n) / static_cast<double>(s);
  return 1.0 - 2.0 / ((gamma * (L + mu) + 2.0) * batches);
}

}  // namespace

RateReport theoretical_rate(double gamma, std::size_t s, std::size_t n, double mu, double L) {
  check_gamma(gamma);
  check_batch(s, n);
  check_constants(mu, L);
  RateReport r;
  r.rho_prox = prox_term(gamma, mu, L);
  r.rho_sample = sample_term(gamma, s, n, mu, L);
  r.rho = std::max(r.rho_prox, r.rho_sample);
  if (s == 1) r.rho_defazio = defazio_rate(gamma, n, mu, L);
  if (s == n) r.rho_dr = dr_rate(gamma, mu, L);
  return r;
}

double optimal_stepsize(std::size_t s, std::size_t n, double mu, double L) {
  check_batch(s, n);
  check_constants(mu, L);
  return std::sqrt(static_cast<double>(s) / (L * mu * static_cast<double>(n)));
}

double iteration_complexity(double gamma, std::size_t s, std::size_t n, double mu, double L,
                            double psi0, double eps) {
  const RateReport r = theoretical_rate(gamma, s, n, mu, L);
  if (!(eps > 0.0) || !(eps <= psi0))
    fail(Errc::eps_not_below_psi0,
         "need 0 < eps <= psi0, got eps=" + std::to_string(eps) + " psi0=" + std::to_string(psi0));
  return std::log(psi0 / eps) / (1.0 - r.rho);
}

double defazio_rate(double gamma, std::size_t n, double mu, double L) {
  check_gamma(gamma);
  check_batch(1, n);
  check_constants(mu, L);
  return std::max(1.0 / (1.0 + gamma * mu),
                  1.0 - 1.0 / ((gamma * L + 1.0) * static_cast<double>(n)));
}

double dr_rate(double gamma, double mu, double L) {
  check_gamma(gamma);
  check_constants(mu, L);
  return std::max(1.0 / (1.0 + gamma * mu), 1.0 - 1.0 / (gamma * L + 1.0));
}

LyapunovWeights lyapunov_weights(double gamma, std::size_t s, double mu, double L) {
  check_gamma(gamma);
  check_constants(mu, L);
  LyapunovWeights w;
  w.w_x = (1.0 + 2.0 * gamma * mu * L / (L + mu)) * static_cast<double>(s);
  w.w_g = (1.0 + 2.0 / (gamma * (L + mu))) * gamma * gamma;
  return w;
}

double lyapunov(const SolverState& state, const FiniteSumProblem& problem,
                const Reference& reference, double gamma, std::size_t s) {
  if (state.x.size() != reference.x_star.size() ||
      state.grad_table.rows() != reference.grad_star.rows() ||
      state.grad_table.dim() != reference.grad_star.dim())
    fail(Errc::dimension_mismatch, "state and reference shapes differ");
  const LyapunovWeights w = lyapunov_weights(gamma, s, problem.mu(), problem.L());
  double table_err = 0.0;
  for (std::size_t i = 0; i < state.grad_table.rows(); ++i)
    table_err += kernels::squared_distance(state.grad_table.row(i), reference.grad_star.row(i));
  return w.w_x * kernels::squared_distance(state.x, reference.x_star) + w.w_g * table_err;
}

Reference reference_from_solution(const FiniteSumProblem& problem, cspan x_star) {
  if (x_star.size() != problem.dim()) fail(Errc::dimension_mismatch, "x_star dimension");
  Reference ref;
  ref.x_star.assign(x_star.begin(), x_star.end());
  ref.grad_star = GradientTable(problem.size(), problem.dim());
  for (std::size_t i = 0; i < problem.size(); ++i)
    problem.component(i).gradient(x_star, ref.grad_star.row(i));
  return ref;
}

Reference reference_solution(const FiniteSumProblem& problem, double tol,
                             std::uint64_t max_iters) {
  if (!(tol > 0.0)) fail(Errc::invalid_constants, "tolerance must be positive");
  const std::size_t d = problem.dim();
  const auto di = static_cast<Eigen::Index>(d);

  bool all_quadratic = true;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(di, di);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(di);
  for (const auto& f : problem.components()) {
    const auto q = f->quadratic_form();
    if (!q) {
      all_quadratic = false;
      break;
    }
    H += q->A;
    b += q->b;
  }

  Vector x(d, 0.0);
  if (all_quadratic) {
    const Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success) fail(Errc::singular_system, "summed Hessian not definite");
    as_eigen(mspan(x)) = llt.solve(-b);
    return reference_from_solution(problem, x);
  }

  const double step = 1.0 / (static_cast<double>(problem.size()) * problem.L());
  for (std::uint64_t it = 0;; ++it) {
    const Vector g = full_gradient(problem, x);
    if (std::sqrt(kernels::squared_norm(g)) <= tol) break;
    if (it >= max_iters)
      fail(Errc::max_iterations, "gradient descent did not reach " + std::to_string(tol) +
                                     " in " + std::to_string(max_iters) + " steps");
    kernels::axpy(-step, g, x);
  }
  return reference_from_solution(problem, x);
}

ContractionCheck verify_one_step_contraction(const SolverState& state,
                                             const FiniteSumProblem& problem, double gamma,
                                             std::size_t s, const Reference& reference,
                                             Fault fault) {
  const RateReport rate = theoretical_rate(gamma, s, problem.size(), problem.mu(), problem.L());
  const auto batches = enumerate_k_subsets(problem.size(), s);
  double total = 0.0;
  for (const auto& batch : batches) {
    SolverState next = state;
    apply_step(next, problem, gamma, batch.indices, fault);
    total += lyapunov(next, problem, reference, gamma, s);
  }
  ContractionCheck c;
  c.lhs = total / static_cast<double>(batches.size());
  c.rhs = rate.rho * lyapunov(state, problem, reference, gamma, s);
  c.ok = c.lhs <= c.rhs + 1e-9 * (1.0 + c.rhs);
  return c;
}

bool check_coercivity(const ComponentFunction& f, cspan x, cspan y, double mu, double L) {
  if (x.size() != f.dim() || y.size() != f.dim())
    fail(Errc::dimension_mismatch, "coercivity points must match the component dimension");
  const Vector gx = f.gradient(x);
  const Vector gy = f.gradient(y);
  double inner = 0.0;
  double dx = 0.0;
  double dg = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double a = gx[k] - gy[k];
    const double b = x[k] - y[k];
    inner += a * b;
    dx += b * b;
    dg += a * a;
  }
  const double bound = mu * L / (L + mu) * dx + dg / (L + mu);
  return inner >= bound - 1e-12 * (1.0 + dx);
}

}  // namespace psaga

#include "psaga/solver.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "psaga/analysis.hpp"
#include "psaga/error.hpp"
#include "psaga/kernels.hpp"
#include "psaga/sampler.hpp"

namespace psaga {

Vector GradientTable::mean() const {
  Vector m(dim_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) kernels::axpy(1.0, row(i), m);
  const auto n = static_cast<double>(rows_);
  for (double& v : m) v /= n;
  return m;
}

double resolve_stepsize(const FiniteSumProblem& problem, const SolverConfig& config) {
  const std::size_t n = problem.size();
  if (config.s < 1 || config.s > n)
    fail(Errc::invalid_batch_size, "minibatch size " + std::to_string(config.s) +
                                       " not in [1, " + std::to_string(n) + "]");
  if (config.trace_every < 1) fail(Errc::invalid_config, "trace_every must be >= 1");
  if (!(config.stop_dist_sq >= 0.0)) fail(Errc::invalid_config, "stop_dist_sq must be >= 0");
  if (!config.gamma) return optimal_stepsize(config.s, n, problem.mu(), problem.L());
  const double gamma = *config.gamma;
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    fail(Errc::invalid_config, "stepsize must be positive, got " + std::to_string(gamma));
  return gamma;
}

SolverState initialize(const FiniteSumProblem& problem, const SolverConfig& config, cspan x0,
                       const std::optional<GradientTable>& g0) {
  const std::size_t n = problem.size();
  const std::size_t d = problem.dim();
  if (x0.size() != d)
    fail(Errc::dimension_mismatch, "x0 has dimension " + std::to_string(x0.size()) +
                                       ", problem has " + std::to_string(d));
  SolverState state;
  state.x.assign(x0.begin(), x0.end());
  state.grad_table = GradientTable(n, d);
  switch (config.init_gradients) {
    case InitGradients::at_x0:
      for (std::size_t i = 0; i < n; ++i) problem.component(i).gradient(x0, state.grad_table.row(i));
      break;
    case InitGradients::zeros:
      break;
    case InitGradients::provided:
      if (!g0) fail(Errc::missing_provided_gradients, "init_gradients=provided without a table");
      if (g0->rows() != n || g0->dim() != d)
        fail(Errc::dimension_mismatch, "provided gradient table is " + std::to_string(g0->rows()) +
                                           "x" + std::to_string(g0->dim()));
      state.grad_table = *g0;
      break;
  }
  state.g_avg = state.grad_table.mean();
  return state;
}

void apply_step(SolverState& state, const FiniteSumProblem& problem, double gamma,
                std::span<const std::size_t> batch, Fault fault) {
  const std::size_t n = problem.size();
  const std::size_t d = problem.dim();
  const std::size_t s = batch.size();
  Vector z(d);
  Vector sum(d, 0.0);
  for (const std::size_t i : batch) {
    mspan g_i = state.grad_table.row(i);
    kernels::shifted_point(state.x, gamma, g_i, state.g_avg, z);
    ProxResult p;
    try {
      p = problem.component(i).prox(gamma, z);
    } catch (const Error& e) {
      fail(Errc::prox_failure, "component " + std::to_string(i) + ": " + e.what());
    }
    kernels::scaled_difference(z, p.point, gamma, g_i);
    kernels::axpy(1.0, p.point, sum);
  }
  for (double& v : sum) v /= static_cast<double>(s);

  const double nd = static_cast<double>(n);
  const double sd = static_cast<double>(s);
  double keep = (nd - sd) / nd;
  if (fault == Fault::average_keep_coefficient) keep = (nd - sd + 1.0) / nd;
  kernels::blend(keep, state.g_avg, sd / (nd * gamma), state.x, sum);
  state.x = std::move(sum);
  ++state.t;
}

void step(SolverState& state, const FiniteSumProblem& problem, const SolverConfig& config,
          Rng& rng) {
  const double gamma = resolve_stepsize(problem, config);
  const SubsetSample batch = sample_k_subset(rng, problem.size(), config.s, state.t);
  apply_step(state, problem, gamma, batch.indices, config.fault);
  if (config.refresh_every > 0 && state.t % config.refresh_every == 0)
    state.g_avg = state.grad_table.mean();
}

double table_drift(const SolverState& state) {
  return std::sqrt(kernels::squared_distance(state.g_avg, state.grad_table.mean()));
}

RunResult run(const FiniteSumProblem& problem, const SolverConfig& config, cspan x0,
              const std::optional<GradientTable>& g0, const Reference* reference) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  RunResult result;
  result.gamma = resolve_stepsize(problem, config);
  result.state = initialize(problem, config, x0, g0);

  std::optional<Reference> owned;
  if (!reference && problem.known_solution()) {
    owned = reference_from_solution(problem, *problem.known_solution());
    reference = &*owned;
  }

  SolverState& state = result.state;
  auto psi = [&] { return lyapunov(state, problem, *reference, result.gamma, config.s); };
  auto dist_sq = [&] { return kernels::squared_distance(state.x, reference->x_star); };
  auto record = [&] {
    TraceRecord r;
    r.t = state.t;
    if (reference) {
      r.dist_sq = dist_sq();
      r.lyapunov = result.lyapunov.back();
    }
    r.table_drift = table_drift(state);
    r.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count();
    result.trace.push_back(r);
  };

  if (reference) result.lyapunov.push_back(psi());
  record();

  Rng rng(config.seed);
  while (state.t < config.max_iters) {
    if (reference && config.stop_dist_sq > 0.0 && dist_sq() <= config.stop_dist_sq) break;
    step(state, problem, config, rng);
    if (reference) result.lyapunov.push_back(psi());
    if (state.t % config.trace_every == 0) record();
  }
  if (result.trace.back().t != state.t) record();
  return result;
}

}  // namespace psaga

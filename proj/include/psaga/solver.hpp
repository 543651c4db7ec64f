#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psaga/problem.hpp"
#include "psaga/rng.hpp"

namespace psaga {

/// n rows of d doubles in one contiguous block.
class GradientTable {
 public:
  GradientTable() = default;
  GradientTable(std::size_t rows, std::size_t dim) : rows_(rows), dim_(dim), data_(rows * dim) {}

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }

  mspan row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  cspan row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  /// (1/n) sum_i row(i), summed in ascending row order.
  Vector mean() const;

  friend bool operator==(const GradientTable&, const GradientTable&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

enum class InitGradients { at_x0, zeros, provided };

/// Deliberate defects for mutation-testing the verification suites.
enum class Fault {
  none,
  /// Uses (n - s + 1) / n instead of (n - s) / n in the running-average update.
  average_keep_coefficient,
};

struct SolverConfig {
  /// nullopt resolves to optimal_stepsize(s, n, mu, L).
  std::optional<double> gamma;
  std::size_t s = 1;
  std::uint64_t max_iters = 1000;
  std::uint64_t seed = 0;
  /// Halt once ||x - x_star||^2 <= stop_dist_sq (0 disables; needs x_star).
  double stop_dist_sq = 0.0;
  std::uint64_t trace_every = 1;
  /// Recompute the running average as the exact table mean every this many
  /// iterations; 0 never recomputes.
  std::uint64_t refresh_every = 1000;
  InitGradients init_gradients = InitGradients::at_x0;
  Fault fault = Fault::none;
};

struct SolverState {
  std::uint64_t t = 0;
  Vector x;
  GradientTable grad_table;
  Vector g_avg;
};

/// Minimizer and the per-component gradients there.
struct Reference {
  Vector x_star;
  GradientTable grad_star;
};

struct TraceRecord {
  std::uint64_t t = 0;
  std::optional<double> dist_sq;
  std::optional<double> lyapunov;
  double table_drift = 0.0;
  std::int64_t wall_ns = 0;
};

struct RunResult {
  SolverState state;
  double gamma = 0.0;
  std::vector<TraceRecord> trace;
  /// Lyapunov value after every iteration (index = t); empty without x_star.
  std::vector<double> lyapunov;
};

/// Checks the config against the problem and returns the stepsize to use.
/// Throws invalid_batch_size or invalid_config.
double resolve_stepsize(const FiniteSumProblem& problem, const SolverConfig& config);

SolverState initialize(const FiniteSumProblem& problem, const SolverConfig& config, cspan x0,
                       const std::optional<GradientTable>& g0 = std::nullopt);

/// One iteration with a given minibatch (ascending indices):
///   z_i = x + gamma (g_i - g_avg);  x_i = prox_{gamma f_i}(z_i);  g_i = (z_i - x_i) / gamma
///   x' = mean_i x_i;  g_avg' = (n-s)/n g_avg + s/(n gamma) (x - x')
/// Prox failures are rethrown as prox_failure naming the component.
void apply_step(SolverState& state, const FiniteSumProblem& problem, double gamma,
                std::span<const std::size_t> batch, Fault fault = Fault::none);

/// Draws the minibatch from rng, applies it, then refreshes the average on
/// the configured cadence.
void step(SolverState& state, const FiniteSumProblem& problem, const SolverConfig& config,
          Rng& rng);

/// ||g_avg - mean(grad_table)||
double table_drift(const SolverState& state);

/// Runs from x0 until max_iters or the distance threshold. When reference is
/// null and the problem has a known solution, the reference is built from it.
RunResult run(const FiniteSumProblem& problem, const SolverConfig& config, cspan x0,
              const std::optional<GradientTable>& g0 = std::nullopt,
              const Reference* reference = nullptr);

}  // namespace psaga

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "psaga/analysis.hpp"
#include "psaga/error.hpp"
#include "psaga/problems.hpp"
#include "psaga/solver.hpp"
#include "psaga/verify.hpp"

namespace psaga::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitSolver = 4;

/// Burn-in skipped by the empirical contraction estimate.
inline constexpr std::size_t kBurnIn = 10;
/// The estimate stops once Psi has fallen this far below Psi^0; beyond it the
/// trajectory sits on the floating-point floor and the ratios carry no signal.
inline constexpr double kContractionFloor = 1e-20;

struct DataFile {
  std::filesystem::path path;
  double mu = 1.0;
};

struct RunManifest {
  std::variant<GeneratorSpec, DataFile> problem;
  SolverConfig config;
  std::filesystem::path out_dir = "out";
  std::size_t repeats = 1;
  /// When false, wall_ns is written as 0 so traces are byte-reproducible.
  bool record_wall_time = true;
};

struct RunSummary {
  double gamma = 0.0;
  RateReport rates;
  double empirical_contraction = 0.0;
  double final_dist_sq = 0.0;
  std::uint64_t prox_calls = 0;
  std::int64_t wall_ns = 0;
};

struct SweepRow {
  double gamma = 0.0;
  std::size_t s = 0;
  double rho = 0.0;
  double empirical_contraction = 0.0;
  /// Mean over repeats; nullopt when some repeat never reached the threshold.
  std::optional<double> iters_to_threshold;
  std::optional<double> prox_calls;
  std::int64_t wall_ns = 0;
};

/// Generated problems carry their planted solution; file problems get one
/// from reference_solution.
FiniteSumProblem build_problem(const RunManifest& manifest);

/// Geometric mean of Psi^{t+1} / Psi^t over t >= burn_in, stopping at the
/// first t where Psi^t <= kContractionFloor * Psi^0. NaN if the window is empty.
double empirical_contraction(std::span<const double> psi, std::size_t burn_in = kBurnIn);

/// First t with psi[t] <= threshold * psi[0].
std::optional<std::size_t> iterations_to_threshold(std::span<const double> psi, double threshold);

/// t,dist_sq,lyapunov,table_drift,wall_ns with 17 significant digits.
void write_trace_csv(std::ostream& os, std::span<const TraceRecord> trace);
std::string format_number(double v);

nlohmann::json to_json(const RateReport& r);
nlohmann::json to_json(const RunSummary& s);

/// Runs every repeat, writes trace_<k>.csv and summary.json into out_dir.
/// Throws psaga::Error.
RunSummary execute_run(const RunManifest& manifest);

/// One row per (gamma, s) cell; nullopt gamma means the optimal stepsize for
/// that s. Empty axes fall back to the manifest's gamma / s.
std::vector<SweepRow> execute_sweep(const RunManifest& manifest,
                                    const std::vector<std::optional<double>>& gammas,
                                    const std::vector<std::size_t>& s_values,
                                    double threshold = 1e-8);

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

/// Error-to-exit-code wrappers that print a one-line diagnostic to err.
int cmd_run(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunManifest& manifest, const std::vector<std::optional<double>>& gammas,
              const std::vector<std::size_t>& s_values, double threshold, std::ostream& out,
              std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out);
int cmd_rates(double gamma, std::size_t s, std::size_t n, double mu, double L, std::ostream& out,
              std::ostream& err);

/// Maps an error kind to the CLI exit code.
int exit_code_for(Errc code);

}  // namespace psaga::app

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "psaga/app.hpp"
#include "psaga/error.hpp"

namespace psaga::app {
namespace {

struct Trajectories {
  double gamma = 0.0;
  std::vector<RunResult> runs;
  std::int64_t wall_ns = 0;
};

Trajectories run_repeats(const FiniteSumProblem& problem, const SolverConfig& base,
                         std::size_t repeats, const Reference& ref) {
  if (repeats < 1) fail(Errc::invalid_config, "repeats must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  Trajectories out;
  out.gamma = resolve_stepsize(problem, base);
  SolverConfig cfg = base;
  cfg.gamma = out.gamma;
  const Vector x0(problem.dim(), 0.0);
  for (std::size_t k = 0; k < repeats; ++k) {
    cfg.seed = base.seed + k;
    out.runs.push_back(run(problem, cfg, x0, std::nullopt, &ref));
  }
  out.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

double mean_contraction(const Trajectories& tr) {
  double acc = 0.0;
  for (const auto& r : tr.runs) acc += empirical_contraction(r.lyapunov);
  return acc / static_cast<double>(tr.runs.size());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(Errc::io_error, "cannot create " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::io_error, "cannot write " + path.string());
  return os;
}

template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::io_error:
    case Errc::parse_error:
    case Errc::empty_file:
    case Errc::inconsistent_dimension:
      return kExitIo;
    case Errc::max_inner_iterations:
    case Errc::prox_failure:
    case Errc::max_iterations:
    case Errc::singular_system:
    case Errc::not_stationary:
      return kExitSolver;
    default:
      return kExitConfig;
  }
}

FiniteSumProblem build_problem(const RunManifest& manifest) {
  if (const auto* spec = std::get_if<GeneratorSpec>(&manifest.problem)) return generate(*spec);
  const auto& file = std::get<DataFile>(manifest.problem);
  FiniteSumProblem p = load_libsvm(file.path, file.mu).problem;
  const Reference ref = reference_solution(p);
  return p.with_known_solution(ref.x_star);
}

double empirical_contraction(std::span<const double> psi, std::size_t burn_in) {
  if (psi.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double floor = kContractionFloor * psi[0];
  std::size_t end = burn_in;
  while (end + 1 < psi.size() && psi[end] > floor && psi[end + 1] > 0.0) ++end;
  if (end <= burn_in || !(psi[burn_in] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  // geometric mean of consecutive ratios telescopes
  return std::exp((std::log(psi[end]) - std::log(psi[burn_in])) /
                  static_cast<double>(end - burn_in));
}

std::optional<std::size_t> iterations_to_threshold(std::span<const double> psi,
                                                   double threshold) {
  for (std::size_t t = 0; t < psi.size(); ++t)
    if (psi[t] <= threshold * psi[0]) return t;
  return std::nullopt;
}

RunSummary execute_run(const RunManifest& manifest) {
  const FiniteSumProblem problem = build_problem(manifest);
  const Reference ref = reference_from_solution(problem, *problem.known_solution());
  const Trajectories tr = run_repeats(problem, manifest.config, manifest.repeats, ref);

  ensure_dir(manifest.out_dir);
  RunSummary s;
  s.gamma = tr.gamma;
  s.rates = theoretical_rate(tr.gamma, manifest.config.s, problem.size(), problem.mu(), problem.L());
  s.empirical_contraction = mean_contraction(tr);
  s.wall_ns = manifest.record_wall_time ? tr.wall_ns : 0;
  double dist = 0.0;
  for (std::size_t k = 0; k < tr.runs.size(); ++k) {
    const RunResult& r = tr.runs[k];
    dist += r.trace.back().dist_sq.value_or(0.0);
    s.prox_calls += r.state.t * manifest.config.s;
    std::vector<TraceRecord> trace = r.trace;
    if (!manifest.record_wall_time)
      for (auto& rec : trace) rec.wall_ns = 0;
    auto os = open_out(manifest.out_dir / ("trace_" + std::to_string(k) + ".csv"));
    write_trace_csv(os, trace);
    if (!os) fail(Errc::io_error, "write failed in " + manifest.out_dir.string());
  }
  s.final_dist_sq = dist / static_cast<double>(tr.runs.size());

  auto os = open_out(manifest.out_dir / "summary.json");
  os << to_json(s).dump(2) << '\n';
  if (!os) fail(Errc::io_error, "write failed in " + manifest.out_dir.string());
  return s;
}

std::vector<SweepRow> execute_sweep(const RunManifest& manifest,
                                    const std::vector<std::optional<double>>& gammas,
                                    const std::vector<std::size_t>& s_values, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    fail(Errc::invalid_config, "threshold must lie in (0, 1)");
  const FiniteSumProblem problem = build_problem(manifest);
  const Reference ref = reference_from_solution(problem, *problem.known_solution());
  const std::vector<std::optional<double>> g_axis =
      gammas.empty() ? std::vector<std::optional<double>>{manifest.config.gamma} : gammas;
  const std::vector<std::size_t> s_axis =
      s_values.empty() ? std::vector<std::size_t>{manifest.config.s} : s_values;

  std::vector<SweepRow> rows;
  for (const std::size_t s : s_axis)
    for (const auto& gamma : g_axis) {
      SolverConfig cfg = manifest.config;
      cfg.s = s;
      cfg.gamma = gamma;
      const Trajectories tr = run_repeats(problem, cfg, manifest.repeats, ref);
      SweepRow row;
      row.gamma = tr.gamma;
      row.s = s;
      row.rho = theoretical_rate(tr.gamma, s, problem.size(), problem.mu(), problem.L()).rho;
      row.empirical_contraction = mean_contraction(tr);
      row.wall_ns = tr.wall_ns;
      double iters = 0.0;
      bool reached = true;
      for (const auto& r : tr.runs) {
        const auto hit = iterations_to_threshold(r.lyapunov, threshold);
        if (!hit) {
          reached = false;
          break;
        }
        iters += static_cast<double>(*hit);
      }
      if (reached) {
        row.iters_to_threshold = iters / static_cast<double>(tr.runs.size());
        row.prox_calls = *row.iters_to_threshold * static_cast<double>(s);
      }
      rows.push_back(row);
    }
  return rows;
}

int cmd_run(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunSummary s = execute_run(manifest);
    out << to_json(s).dump(2) << '\n';
    return kExitOk;
  });
}

int cmd_sweep(const RunManifest& manifest, const std::vector<std::optional<double>>& gammas,
              const std::vector<std::size_t>& s_values, double threshold, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = execute_sweep(manifest, gammas, s_values, threshold);
    ensure_dir(manifest.out_dir);
    auto os = open_out(manifest.out_dir / "sweep.csv");
    write_sweep_csv(os, rows);
    if (!os) fail(Errc::io_error, "write failed in " + manifest.out_dir.string());
    write_sweep_csv(out, rows);
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
  bool all = true;
  for (const SuiteResult& r : run_verification(opts)) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.seconds << " s): " << r.detail
        << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_rates(double gamma, std::size_t s, std::size_t n, double mu, double L, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    out << to_json(theoretical_rate(gamma, s, n, mu, L)).dump(2) << '\n';
    return kExitOk;
  });
}

}  // namespace psaga::app

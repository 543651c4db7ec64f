// pointsaga: run, sweep, verify and rate-report front end.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psaga/app.hpp"
#include "psaga/error.hpp"

namespace {

using psaga::app::kExitConfig;

struct CommonFlags {
  std::string problem = "quad";
  std::size_t n = 50;
  std::size_t dim = 10;
  double mu = 1.0;
  double L = 10.0;
  std::size_t s = 1;
  std::string gamma = "auto";
  std::uint64_t iters = 1000;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  std::uint64_t trace_every = 1;
  std::uint64_t refresh_every = 1000;
  double stop_dist_sq = 0.0;
  std::string init = "at_x0";
  std::string out = "out";
  bool no_wall_time = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--problem", f.problem, "quad | ridge | logistic | file:<path>");
  cmd->add_option("--n", f.n, "number of components (generated problems)");
  cmd->add_option("--dim", f.dim, "dimension (generated problems)");
  cmd->add_option("--mu", f.mu, "strong convexity modulus");
  cmd->add_option("--L", f.L, "smoothness constant (generated problems)");
  cmd->add_option("--s", f.s, "minibatch size");
  cmd->add_option("--gamma", f.gamma, "stepsize, or 'auto' for sqrt(s/(L mu n))");
  cmd->add_option("--iters", f.iters, "iteration budget");
  cmd->add_option("--seed", f.seed, "64-bit seed; repeat k uses seed+k");
  cmd->add_option("--repeats", f.repeats, "independent trajectories")->check(CLI::PositiveNumber);
  cmd->add_option("--trace-every", f.trace_every, "trace cadence")->check(CLI::PositiveNumber);
  cmd->add_option("--refresh-every", f.refresh_every, "exact average recompute cadence (0 = never)");
  cmd->add_option("--stop-dist-sq", f.stop_dist_sq, "halt once ||x - x*||^2 falls to this");
  cmd->add_option("--init", f.init, "initial gradient table: at_x0 | zeros")
      ->check(CLI::IsMember({"at_x0", "zeros"}));
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--no-wall-time", f.no_wall_time, "write wall_ns as 0 (byte-reproducible traces)");
}

std::optional<double> parse_gamma(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0)
    psaga::fail(psaga::Errc::invalid_config, "bad stepsize '" + text + "'");
  return v;
}

psaga::app::RunManifest to_manifest(const CommonFlags& f) {
  psaga::app::RunManifest m;
  if (f.problem.rfind("file:", 0) == 0) {
    m.problem = psaga::app::DataFile{f.problem.substr(5), f.mu};
  } else {
    psaga::GeneratorSpec spec{psaga::Family::quadratic, f.n, f.dim, f.mu, f.L, f.seed};
    if (f.problem == "ridge")
      spec.family = psaga::Family::ridge_regression;
    else if (f.problem == "logistic")
      spec.family = psaga::Family::logistic_ridge;
    else if (f.problem != "quad")
      psaga::fail(psaga::Errc::invalid_config, "unknown problem '" + f.problem + "'");
    m.problem = spec;
  }
  m.config.gamma = parse_gamma(f.gamma);
  m.config.s = f.s;
  m.config.max_iters = f.iters;
  m.config.seed = f.seed;
  m.config.trace_every = f.trace_every;
  m.config.refresh_every = f.refresh_every;
  m.config.stop_dist_sq = f.stop_dist_sq;
  m.config.init_gradients =
      f.init == "zeros" ? psaga::InitGradients::zeros : psaga::InitGradients::at_x0;
  m.out_dir = f.out;
  m.repeats = f.repeats;
  m.record_wall_time = !f.no_wall_time;
  return m;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minibatch Point-SAGA solver and verification harness"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "run trajectories and write traces + summary");
  add_common(run_cmd, run_flags);

  CommonFlags sweep_flags;
  std::string gamma_axis;
  std::string s_axis;
  double threshold = 1e-8;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid over stepsizes and minibatch sizes");
  add_common(sweep_cmd, sweep_flags);
  auto* gamma_opt = sweep_cmd->add_option("--gammas", gamma_axis, "comma list of stepsizes or 'auto'");
  auto* s_opt = sweep_cmd->add_option("--s-values", s_axis, "comma list of minibatch sizes");
  sweep_cmd->add_option("--threshold", threshold, "Psi / Psi^0 target for iteration counts");

  std::string scale = "quick";
  std::string fault = "none";
  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  verify_cmd->add_option("--scale", scale, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--inject-fault", fault, "mutation check: none | average")
      ->check(CLI::IsMember({"none", "average"}))
      ->group("");

  double r_gamma = 0.0;
  std::size_t r_s = 0;
  std::size_t r_n = 0;
  double r_mu = 0.0;
  double r_L = 0.0;
  auto* rates_cmd = app.add_subcommand("rates", "print the contraction rates as JSON");
  rates_cmd->add_option("--gamma", r_gamma)->required();
  rates_cmd->add_option("--s", r_s)->required();
  rates_cmd->add_option("--n", r_n)->required();
  rates_cmd->add_option("--mu", r_mu)->required();
  rates_cmd->add_option("--L", r_L)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*run_cmd) return psaga::app::cmd_run(to_manifest(run_flags), std::cout, std::cerr);

    if (*sweep_cmd) {
      if (gamma_opt->count() == 0 && s_opt->count() == 0) {
        std::cerr << "error: sweep needs --gammas and/or --s-values\n";
        return kExitConfig;
      }
      std::vector<std::optional<double>> gammas;
      for (const auto& g : split_list(gamma_axis)) gammas.push_back(parse_gamma(g));
      std::vector<std::size_t> s_values;
      for (const auto& s : split_list(s_axis)) {
        std::size_t used = 0;
        const unsigned long v = std::stoul(s, &used);
        if (used != s.size()) psaga::fail(psaga::Errc::invalid_config, "bad minibatch size '" + s + "'");
        s_values.push_back(v);
      }
      if ((gamma_opt->count() > 0 && gammas.empty()) || (s_opt->count() > 0 && s_values.empty())) {
        std::cerr << "error: empty sweep axis\n";
        return kExitConfig;
      }
      return psaga::app::cmd_sweep(to_manifest(sweep_flags), gammas, s_values, threshold,
                                   std::cout, std::cerr);
    }

    if (*verify_cmd) {
      psaga::VerifyOptions opts;
      opts.scale = scale == "full" ? psaga::VerifyScale::full : psaga::VerifyScale::quick;
      if (fault == "average") opts.fault = psaga::Fault::average_keep_coefficient;
      return psaga::app::cmd_verify(opts, std::cout);
    }

    return psaga::app::cmd_rates(r_gamma, r_s, r_n, r_mu, r_L, std::cout, std::cerr);
  } catch (const psaga::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return psaga::app::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

#include "psaga/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

#include "psaga/components.hpp"
#include "psaga/kernels.hpp"
#include "psaga/problems.hpp"
#include "psaga/prox.hpp"

namespace psaga {
namespace {

bool full(const VerifyOptions& o) { return o.scale == VerifyScale::full; }

Vector normal_vector(Rng& rng, std::size_t d, double scale = 1.0) {
  Vector v(d);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

// One randomly drawn member of each shipped prox family, plus the declared
// constants the generic path needs.
struct ProxCase {
  std::string family;
  std::shared_ptr<const ComponentFunction> f;
  double tol;
};

std::vector<ProxCase> random_prox_cases(Rng& rng) {
  const std::size_t d = 1 + rng.below(6);
  const double mu = rng.uniform(0.1, 1.0);
  const double L = mu + rng.uniform(0.0, 20.0);
  std::vector<ProxCase> out;

  Eigen::MatrixXd G(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) G(r, c) = rng.normal();
  Eigen::MatrixXd A = G * G.transpose();
  Eigen::VectorXd b(d);
  for (std::size_t k = 0; k < d; ++k) b[k] = rng.normal();
  out.push_back({"quadratic", std::make_shared<QuadraticComponent>(A, b), kTolProx});

  out.push_back({"rank_one_quadratic",
                 std::make_shared<RidgeComponent>(normal_vector(rng, d, std::sqrt(L - mu + 1e-3)),
                                                  rng.normal(), mu),
                 kTolProx});

  out.push_back({"logistic_ridge",
                 std::make_shared<LogisticRidgeComponent>(normal_vector(rng, d, 2.0),
                                                          rng.uniform() < 0.5 ? -1.0 : 1.0, mu),
                 kTolProx});

  // smooth but non-quadratic: mu/2 ||x||^2 + sum_k w_k log cosh(x_k), curvature in [mu, mu + max w]
  Vector w(d);
  for (double& v : w) v = rng.uniform(0.0, L - mu);
  auto value = [w, mu](cspan x) {
    double acc = 0.5 * mu * kernels::squared_norm(x);
    for (std::size_t k = 0; k < x.size(); ++k) acc += w[k] * std::log(std::cosh(x[k]));
    return acc;
  };
  auto grad = [w, mu](cspan x, mspan g) {
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = mu * x[k] + w[k] * std::tanh(x[k]);
  };
  out.push_back(
      {"generic", std::make_shared<SmoothComponent>(d, value, grad, mu, L, 1e-10), 1e-10});
  return out;
}

template <typename Body>
SuiteResult timed(std::string name, Body body) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = std::move(name);
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  for (std::size_t k = 0; k < count; ++k)
    g[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(count - 1));
  return g;
}

}  // namespace

SolverState random_state(const Reference& reference, Rng& rng, double scale) {
  SolverState st;
  st.x = reference.x_star;
  for (double& v : st.x) v += scale * rng.normal();
  st.grad_table = reference.grad_star;
  for (std::size_t i = 0; i < st.grad_table.rows(); ++i)
    for (double& v : st.grad_table.row(i)) v += scale * rng.normal();
  st.g_avg = st.grad_table.mean();
  return st;
}

SuiteResult suite_prox_residuals(const VerifyOptions& opts) {
  return timed("prox_residuals", [&](SuiteResult& r) {
    Rng rng(opts.seed);
    const std::size_t trials = full(opts) ? 10000 : 1000;
    double worst = 0.0;
    std::string worst_family;
    for (std::size_t t = 0; t < trials; ++t) {
      const double gamma = std::pow(10.0, rng.uniform(-3.0, 2.0));
      for (const auto& c : random_prox_cases(rng)) {
        const Vector z = normal_vector(rng, c.f->dim(), 3.0);
        const ProxResult p = c.f->prox(gamma, z);
        const double resid = prox_residual(*c.f, gamma, z, p.point);
        const double ratio = resid / c.tol;
        if (ratio > worst) {
          worst = ratio;
          worst_family = c.family;
        }
      }
    }
    r.passed = worst <= 1.0;
    std::ostringstream os;
    os << trials << " instances per family, worst residual/tol " << worst << " (" << worst_family
       << ")";
    r.detail = os.str();
  });
}

SuiteResult suite_firm_nonexpansiveness(const VerifyOptions& opts) {
  return timed("firm_nonexpansiveness", [&](SuiteResult& r) {
    Rng rng(opts.seed + 1);
    const std::size_t trials = full(opts) ? 10000 : 1000;
    std::size_t violations = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double gamma = std::pow(10.0, rng.uniform(-3.0, 2.0));
      for (const auto& c : random_prox_cases(rng)) {
        const Vector z1 = normal_vector(rng, c.f->dim(), 3.0);
        const Vector z2 = normal_vector(rng, c.f->dim(), 3.0);
        const Vector p1 = c.f->prox(gamma, z1).point;
        const Vector p2 = c.f->prox(gamma, z2).point;
        double lhs = 0.0;
        double rhs = 0.0;
        double dz = 0.0;
        for (std::size_t k = 0; k < z1.size(); ++k) {
          lhs += (p1[k] - p2[k]) * (p1[k] - p2[k]);
          rhs += (p1[k] - p2[k]) * (z1[k] - z2[k]);
          dz += (z1[k] - z2[k]) * (z1[k] - z2[k]);
        }
        // iterative proxes are only tol-accurate
        const double slack = 1e-12 * (1.0 + dz) + 4.0 * c.tol * std::sqrt(dz);
        if (lhs > rhs + slack) ++violations;
      }
    }
    r.passed = violations == 0;
    r.detail = std::to_string(trials) + " pairs per family, " + std::to_string(violations) +
               " violations";
  });
}

SuiteResult suite_average_drift(const VerifyOptions& opts) {
  return timed("average_drift", [&](SuiteResult& r) {
    const FiniteSumProblem p = gen_quadratic({Family::quadratic, 50, 10, 1.0, 10.0, opts.seed});
    SolverConfig cfg;
    cfg.s = 5;
    cfg.seed = opts.seed;
    cfg.refresh_every = 0;
    cfg.fault = opts.fault;
    cfg.init_gradients = InitGradients::at_x0;
    const std::uint64_t iters = full(opts) ? 10000 : 2000;
    SolverState st = initialize(p, cfg, Vector(p.dim(), 0.0));
    Rng rng(cfg.seed);
    double worst = 0.0;
    for (std::uint64_t t = 0; t < iters; ++t) {
      step(st, p, cfg, rng);
      const double ratio =
          table_drift(st) / (1e-10 * (1.0 + std::sqrt(kernels::squared_norm(st.g_avg))));
      worst = std::max(worst, ratio);
    }
    r.passed = worst <= 1.0;
    std::ostringstream os;
    os << iters << " steps (n=50, s=5, no refresh), worst drift/bound " << worst;
    r.detail = os.str();
  });
}

SuiteResult suite_coercivity(const VerifyOptions& opts) {
  return timed("coercivity", [&](SuiteResult& r) {
    Rng rng(opts.seed + 2);
    const std::size_t pairs = full(opts) ? 1000 : 100;
    std::size_t checked = 0;
    std::size_t failures = 0;
    for (const Family fam : {Family::quadratic, Family::ridge_regression, Family::logistic_ridge}) {
      const FiniteSumProblem p = generate({fam, 10, 4, 0.5, 8.0, opts.seed});
      for (const auto& f : p.components())
        for (std::size_t k = 0; k < pairs; ++k) {
          const Vector x = normal_vector(rng, p.dim(), 3.0);
          const Vector y = normal_vector(rng, p.dim(), 3.0);
          ++checked;
          if (!check_coercivity(*f, x, y, p.mu(), p.L())) ++failures;
        }
    }
    r.passed = failures == 0;
    r.detail = std::to_string(checked) + " pairs, " + std::to_string(failures) + " failures";
  });
}

SuiteResult suite_exhaustive_contraction(const VerifyOptions& opts) {
  return timed("exhaustive_contraction", [&](SuiteResult& r) {
    const FiniteSumProblem p = gen_quadratic({Family::quadratic, 6, 3, 1.0, 10.0, opts.seed});
    const Reference ref = reference_from_solution(p, *p.known_solution());
    Rng rng(opts.seed + 3);
    const std::size_t trials = full(opts) ? 100 : 10;
    std::size_t checks = 0;
    std::size_t failures = 0;
    double worst = 0.0;
    auto check = [&](const SolverState& st, double gamma, std::size_t s) {
      const ContractionCheck c = verify_one_step_contraction(st, p, gamma, s, ref, opts.fault);
      ++checks;
      if (!c.ok) ++failures;
      if (c.rhs > 0.0) worst = std::max(worst, c.lhs / c.rhs);
    };
    for (const std::size_t s : {1, 2, 3, 6}) {
      const double star = optimal_stepsize(s, p.size(), p.mu(), p.L());
      for (const double gamma : {0.1 * star, star, 10.0 * star}) {
        for (std::size_t t = 0; t < trials; ++t) check(random_state(ref, rng), gamma, s);
        // states visited by a trajectory (their running average carries history)
        SolverConfig cfg;
        cfg.gamma = gamma;
        cfg.s = s;
        cfg.seed = opts.seed + s;
        cfg.fault = opts.fault;
        SolverState st = initialize(p, cfg, Vector(p.dim(), 0.0));
        Rng traj(cfg.seed);
        for (std::size_t t = 0; t < trials; ++t) {
          step(st, p, cfg, traj);
          check(st, gamma, s);
        }
      }
    }
    r.passed = failures == 0;
    std::ostringstream os;
    os << checks << " states (n=6, s in {1,2,3,6}), " << failures
       << " failures, worst lhs/rhs " << worst;
    r.detail = os.str();
  });
}

SuiteResult suite_rate_dominance(const VerifyOptions&) {
  return timed("rate_dominance", [&](SuiteResult& r) {
    std::size_t points = 0;
    std::size_t failures = 0;
    const auto gammas = log_grid(1e-3, 1e2, 10);
    const auto kappas = log_grid(1.0, 1e4, 10);
    std::vector<std::size_t> ns;
    for (const double v : log_grid(1.0, 1e3, 10)) ns.push_back(static_cast<std::size_t>(std::lround(v)));
    for (const double gamma : gammas)
      for (const double kappa : kappas)
        for (const std::size_t n : ns) {
          ++points;
          const double mu = 1.0;
          const double L = kappa;
          if (!(theoretical_rate(gamma, 1, n, mu, L).rho <= defazio_rate(gamma, n, mu, L)))
            ++failures;
          if (!(theoretical_rate(gamma, n, n, mu, L).rho <= dr_rate(gamma, mu, L))) ++failures;
        }
    r.passed = failures == 0;
    r.detail = std::to_string(points) + " grid points, " + std::to_string(failures) + " failures";
  });
}

SuiteResult suite_full_batch_determinism(const VerifyOptions& opts) {
  return timed("full_batch_determinism", [&](SuiteResult& r) {
    const FiniteSumProblem p = gen_quadratic({Family::quadratic, 10, 5, 1.0, 10.0, opts.seed});
    SolverConfig cfg;
    cfg.s = p.size();
    cfg.max_iters = full(opts) ? 500 : 100;
    cfg.fault = opts.fault;
    cfg.seed = 1;
    const RunResult a = run(p, cfg, Vector(p.dim(), 0.0));
    cfg.seed = 987654321;
    const RunResult b = run(p, cfg, Vector(p.dim(), 0.0));
    r.passed = a.state.x == b.state.x && a.state.grad_table == b.state.grad_table &&
               a.lyapunov == b.lyapunov;
    r.detail = std::to_string(cfg.max_iters) + " iterations, s=n=10, seeds 1 and 987654321";
  });
}

std::vector<SuiteResult> run_verification(const VerifyOptions& opts) {
  return {suite_prox_residuals(opts),         suite_firm_nonexpansiveness(opts),
          suite_average_drift(opts),          suite_coercivity(opts),
          suite_exhaustive_contraction(opts), suite_rate_dominance(opts),
          suite_full_batch_determinism(opts)};
}

}  // namespace psaga

#include <cmath>

#include "doctest.h"
#include "psaga/analysis.hpp"
#include "psaga/components.hpp"
#include "psaga/error.hpp"
#include "psaga/kernels.hpp"
#include "psaga/problems.hpp"
#include "psaga/verify.hpp"

using namespace psaga;
using doctest::Approx;

namespace {

FiniteSumProblem scalar_half_square() {
  auto f = std::make_shared<QuadraticComponent>(Eigen::MatrixXd::Identity(1, 1),
                                                Eigen::VectorXd::Zero(1));
  return assemble_problem({f}, 1.0, 1.0, 1).with_known_solution({0.0});
}

std::vector<double> log_grid(double lo, double hi, int k) {
  std::vector<double> g(k);
  for (int i = 0; i < k; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (k - 1));
  return g;
}

}  // namespace

TEST_CASE("rates at hand-computed points") {
  auto r = theoretical_rate(1.0, 1, 1, 1.0, 1.0);
  CHECK(r.rho_prox == Approx(0.5).epsilon(1e-15));
  CHECK(r.rho_sample == Approx(0.5).epsilon(1e-15));
  CHECK(r.rho == Approx(0.5).epsilon(1e-15));
  REQUIRE(r.rho_defazio.has_value());
  REQUIRE(r.rho_dr.has_value());

  r = theoretical_rate(0.1, 1, 10, 1.0, 10.0);
  CHECK(r.rho_prox == Approx(11.0 / 13.0).epsilon(1e-14));
  CHECK(r.rho_sample == Approx(1.0 - 2.0 / 3.1 / 10.0).epsilon(1e-14));
  CHECK(r.rho == Approx(0.9354838709677419).epsilon(1e-14));
  CHECK(*r.rho_defazio == Approx(0.95).epsilon(1e-14));
  CHECK_FALSE(r.rho_dr.has_value());
  CHECK(r.rho <= *r.rho_defazio);

  CHECK(defazio_rate(0.1, 10, 1.0, 10.0) == Approx(0.95).epsilon(1e-14));
  CHECK(dr_rate(1.0, 1.0, 1.0) == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("rate functions validate constants") {
  CHECK_THROWS_AS(theoretical_rate(0.0, 1, 1, 1.0, 1.0), Error);
  CHECK_THROWS_AS(theoretical_rate(1.0, 2, 1, 1.0, 1.0), Error);
  CHECK_THROWS_AS(theoretical_rate(1.0, 1, 1, 2.0, 1.0), Error);
  CHECK_THROWS_AS(defazio_rate(1.0, 1, -1.0, 1.0), Error);
  CHECK_THROWS_AS(dr_rate(-1.0, 1.0, 1.0), Error);
}

TEST_CASE("optimal stepsize") {
  CHECK(optimal_stepsize(1, 100, 1.0, 100.0) == Approx(0.01).epsilon(1e-15));
  CHECK(optimal_stepsize(7, 7, 1.0, 1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(optimal_stepsize(5, 50, 1.0, 10.0) == Approx(0.1).epsilon(1e-15));
}

TEST_CASE("iteration complexity") {
  CHECK(std::ceil(iteration_complexity(1.0, 1, 1, 1.0, 1.0, std::exp(1.0), 1.0)) == 2.0);
  CHECK(iteration_complexity(1.0, 1, 1, 1.0, 1.0, 3.0, 3.0) == 0.0);
  CHECK_THROWS_AS(iteration_complexity(1.0, 1, 1, 1.0, 1.0, 1.0, 2.0), Error);
  CHECK_THROWS_AS(iteration_complexity(1.0, 1, 1, 1.0, 1.0, 1.0, 0.0), Error);
}

TEST_CASE("rate terms are monotone in the stepsize and rho stays in (0, 1)") {
  const auto gammas = log_grid(1e-4, 1e4, 60);
  for (const double kappa : {1.0, 10.0, 1e4}) {
    for (const std::size_t s : {std::size_t{1}, std::size_t{7}, std::size_t{20}}) {
      double prev_prox = 1.0;
      double prev_sample = 0.0;
      for (const double g : gammas) {
        const auto r = theoretical_rate(g, s, 20, 1.0, kappa);
        CHECK(r.rho > 0.0);
        CHECK(r.rho < 1.0);
        CHECK(r.rho_prox < prev_prox);
        CHECK(r.rho_sample > prev_sample);
        prev_prox = r.rho_prox;
        prev_sample = r.rho_sample;
      }
    }
  }
}

TEST_CASE("both comparison rates tend to one as the stepsize vanishes") {
  CHECK(defazio_rate(1e-12, 10, 1.0, 10.0) == Approx(1.0).epsilon(1e-10));
  CHECK(dr_rate(1e-12, 1.0, 10.0) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Douglas-Rachford terms balance at 1/sqrt(mu L)") {
  for (const auto& [mu, L] : {std::pair{1.0, 4.0}, std::pair{0.1, 30.0}, std::pair{2.0, 2.0}}) {
    const double g = 1.0 / std::sqrt(mu * L);
    CHECK(1.0 / (1.0 + g * mu) == Approx(1.0 - 1.0 / (g * L + 1.0)).epsilon(1e-14));
  }
}

TEST_CASE("minibatch rate dominates both comparison rates on a grid") {
  for (const double g : log_grid(1e-3, 1e2, 10))
    for (const double kappa : log_grid(1.0, 1e4, 10))
      for (const double nd : log_grid(1.0, 1e3, 10)) {
        const auto n = static_cast<std::size_t>(std::lround(nd));
        CHECK(theoretical_rate(g, 1, n, 1.0, kappa).rho <= defazio_rate(g, n, 1.0, kappa));
        CHECK(theoretical_rate(g, n, n, 1.0, kappa).rho <= dr_rate(g, 1.0, kappa));
      }
}

TEST_CASE("Lyapunov weights and the 1-D value") {
  const auto w = lyapunov_weights(1.0, 1, 1.0, 1.0);
  CHECK(w.w_x == 2.0);
  CHECK(w.w_g == 2.0);

  const auto p = scalar_half_square();
  SolverConfig cfg;
  cfg.init_gradients = InitGradients::zeros;
  auto st = initialize(p, cfg, Vector{2.0});
  const auto ref = reference_from_solution(p, *p.known_solution());
  CHECK(lyapunov(st, p, ref, 1.0, 1) == 8.0);

  const auto check = verify_one_step_contraction(st, p, 1.0, 1, ref);
  CHECK(check.lhs == 4.0);
  CHECK(check.rhs == 4.0);
  CHECK(check.ok);
}

TEST_CASE("Lyapunov vanishes at the fixed point") {
  const auto p = gen_quadratic({Family::quadratic, 6, 3, 1.0, 5.0, 2});
  const auto ref = reference_from_solution(p, *p.known_solution());
  SolverState st;
  st.x = ref.x_star;
  st.grad_table = ref.grad_star;
  st.g_avg = ref.grad_star.mean();
  CHECK(lyapunov(st, p, ref, 0.3, 2) == 0.0);
  const auto check = verify_one_step_contraction(st, p, 0.3, 2, ref);
  CHECK(check.ok);
  CHECK(check.lhs <= 1e-18);
}

TEST_CASE("exhaustive one-step contraction on random states") {
  const auto p = gen_quadratic({Family::quadratic, 6, 3, 1.0, 10.0, 17});
  const auto ref = reference_from_solution(p, *p.known_solution());
  Rng rng(3);
  for (const std::size_t s : {1, 2, 3, 6}) {
    const double gs = optimal_stepsize(s, 6, 1.0, 10.0);
    for (const double gamma : {0.1 * gs, gs, 10.0 * gs})
      for (int k = 0; k < 20; ++k) {
        const auto st = random_state(ref, rng);
        const auto c = verify_one_step_contraction(st, p, gamma, s, ref);
        CHECK(c.ok);
        CHECK(c.lhs >= 0.0);
      }
  }
}

TEST_CASE("the wrong running-average coefficient is caught") {
  // one step from a consistent state never reads the running average it
  // writes, so the defect only shows on states the faulty solver has visited
  const auto p = gen_quadratic({Family::quadratic, 6, 3, 1.0, 10.0, 17});
  const auto ref = reference_from_solution(p, *p.known_solution());
  SolverConfig cfg;
  cfg.gamma = 1.0;
  cfg.s = 2;
  cfg.fault = Fault::average_keep_coefficient;
  auto st = initialize(p, cfg, Vector(3, 0.0));
  Rng rng(3);
  bool caught = false;
  for (int k = 0; k < 20 && !caught; ++k) {
    step(st, p, cfg, rng);
    caught = !verify_one_step_contraction(st, p, 1.0, 2, ref, cfg.fault).ok;
  }
  CHECK(caught);
}

TEST_CASE("coercivity") {
  const QuadraticComponent id(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  CHECK(check_coercivity(id, Vector{1.0, 2.0}, Vector{-3.0, 0.5}, 1.0, 1.0));
  CHECK(check_coercivity(id, Vector{1.0, 2.0}, Vector{1.0, 2.0}, 1.0, 1.0));
  // declaring a larger mu than the function has must fail somewhere
  CHECK_FALSE(check_coercivity(id, Vector{1.0, 2.0}, Vector{-3.0, 0.5}, 2.0, 2.0));
  CHECK_THROWS_AS(check_coercivity(id, Vector{1.0}, Vector{1.0, 2.0}, 1.0, 1.0), Error);
}

TEST_CASE("generated components satisfy coercivity on random pairs") {
  Rng rng(8);
  for (const Family fam : {Family::quadratic, Family::ridge_regression, Family::logistic_ridge}) {
    const auto p = generate({fam, 5, 4, 0.5, 8.0, 6});
    for (std::size_t i = 0; i < p.size(); ++i)
      for (int k = 0; k < 1000; ++k) {
        Vector x(4);
        Vector y(4);
        for (std::size_t j = 0; j < 4; ++j) {
          x[j] = 3.0 * rng.normal();
          y[j] = 3.0 * rng.normal();
        }
        CHECK(check_coercivity(p.component(i), x, y, p.mu(), p.L()));
      }
  }
}

TEST_CASE("reference solutions") {
  const auto half = assemble_problem(
      {std::make_shared<QuadraticComponent>(Eigen::MatrixXd::Identity(2, 2),
                                            Eigen::VectorXd::Zero(2))},
      1.0, 1.0, 2);
  const auto r0 = reference_solution(half);
  CHECK(r0.x_star == Vector{0.0, 0.0});
  CHECK(r0.grad_star.row(0)[0] == 0.0);

  const auto q = gen_quadratic({Family::quadratic, 7, 3, 1.0, 10.0, 12});
  const auto rq = reference_solution(q);
  CHECK(std::sqrt(kernels::squared_distance(rq.x_star, *q.known_solution())) <= 1e-10);

  const auto lg = gen_logistic_ridge({Family::logistic_ridge, 4, 2, 0.1, 1.0, 3});
  const auto rl = reference_solution(lg);
  const auto g = full_gradient(lg, rl.x_star);
  CHECK(std::sqrt(kernels::squared_norm(g)) <= 1e-12);
  Vector sum(2, 0.0);
  for (std::size_t i = 0; i < 4; ++i) kernels::axpy(1.0, rl.grad_star.row(i), sum);
  CHECK(std::sqrt(kernels::squared_norm(sum)) <= 1e-12);
}

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "psaga/components.hpp"
#include "psaga/error.hpp"
#include "psaga/kernels.hpp"
#include "psaga/problems.hpp"
#include "psaga/rng.hpp"

using namespace psaga;
using doctest::Approx;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected psaga::Error");
  return Errc::invalid_config;
}

// extremal Rayleigh quotients by power iteration on A and on (lmax I - A)
std::pair<double, double> extreme_eigs(const Eigen::MatrixXd& A) {
  const auto power = [](const Eigen::MatrixXd& M) {
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(M.rows(), 1.0, 2.0).normalized();
    double lam = 0.0;
    for (int k = 0; k < 5000; ++k) {
      const Eigen::VectorXd w = M * v;
      lam = v.dot(w);
      if (w.norm() == 0.0) break;
      v = w.normalized();
    }
    return lam;
  };
  const double hi = power(A);
  const Eigen::MatrixXd shifted = hi * Eigen::MatrixXd::Identity(A.rows(), A.cols()) - A;
  return {hi - power(shifted), hi};
}

}  // namespace

TEST_CASE("one-dimensional quadratic with mu = L") {
  const auto p = gen_quadratic({Family::quadratic, 1, 1, 1.0, 1.0, 5});
  REQUIRE(p.known_solution().has_value());
  const auto form = p.component(0).quadratic_form();
  REQUIRE(form.has_value());
  CHECK(form->A(0, 0) == Approx(1.0).epsilon(1e-14));
  // f = 1/2 (x - c)^2, so b = -c and the minimizer is c
  CHECK((*p.known_solution())[0] == Approx(-form->b(0)).epsilon(1e-12));
}

TEST_CASE("quadratic spectra lie in [mu, L] with both ends present") {
  const auto p = gen_quadratic({Family::quadratic, 6, 5, 0.5, 20.0, 11});
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto A = p.component(i).quadratic_form()->A;
    const auto [lo, hi] = extreme_eigs(A);
    CHECK(lo == Approx(0.5).epsilon(1e-8));
    CHECK(hi == Approx(20.0).epsilon(1e-8));
  }
  const auto g = full_gradient(p, *p.known_solution());
  CHECK(std::sqrt(kernels::squared_norm(g)) <= p.size() * 1e-10);
}

TEST_CASE("generators are deterministic in the seed") {
  for (const Family fam : {Family::quadratic, Family::ridge_regression, Family::logistic_ridge}) {
    const GeneratorSpec spec{fam, 8, 3, 0.2, 5.0, 99};
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(*a.known_solution() == *b.known_solution());
    const Vector x{0.3, -1.2, 2.0};
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a.component(i).gradient(x) == b.component(i).gradient(x));
    auto other = spec;
    other.seed = 100;
    CHECK(*generate(other).known_solution() != *a.known_solution());
  }
}

TEST_CASE("ridge rows have the prescribed norm and rank-one spectrum") {
  const auto p = gen_ridge_regression({Family::ridge_regression, 10, 4, 0.5, 6.0, 2});
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& ridge = dynamic_cast<const RidgeComponent&>(p.component(i));
    CHECK(kernels::squared_norm(ridge.row()) == Approx(5.5).epsilon(1e-12));
    const auto A = ridge.quadratic_form()->A;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    const auto ev = es.eigenvalues();
    for (int k = 0; k < 3; ++k) CHECK(ev(k) == Approx(0.5).epsilon(1e-12));
    CHECK(ev(3) == Approx(6.0).epsilon(1e-12));
  }
  const auto g = full_gradient(p, *p.known_solution());
  CHECK(std::sqrt(kernels::squared_norm(g)) <= 1e-10);
}

TEST_CASE("generators reject degenerate constants") {
  CHECK(code_of([] { gen_ridge_regression({Family::ridge_regression, 3, 2, 1.0, 1.0, 0}); }) ==
        Errc::invalid_spec);
  CHECK(code_of([] { gen_logistic_ridge({Family::logistic_ridge, 3, 2, 2.0, 1.0, 0}); }) ==
        Errc::invalid_spec);
  CHECK(code_of([] { gen_quadratic({Family::quadratic, 3, 1, 1.0, 2.0, 0}); }) ==
        Errc::invalid_spec);
}

TEST_CASE("logistic components are L-smooth") {
  const auto p = gen_logistic_ridge({Family::logistic_ridge, 6, 3, 0.1, 3.0, 8});
  Rng rng(2);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& f = dynamic_cast<const LogisticRidgeComponent&>(p.component(i));
    CHECK(kernels::squared_norm(f.row()) == Approx(4.0 * 2.9).epsilon(1e-12));
    CHECK(std::abs(f.label()) == 1.0);
    for (int k = 0; k < 1000; ++k) {
      Vector x(3);
      Vector y(3);
      for (std::size_t j = 0; j < 3; ++j) {
        x[j] = 2.0 * rng.normal();
        y[j] = 2.0 * rng.normal();
      }
      const double dg = std::sqrt(kernels::squared_distance(f.gradient(x), f.gradient(y)));
      CHECK(dg <= p.L() * std::sqrt(kernels::squared_distance(x, y)) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("negating rows and labels leaves the logistic minimizer unchanged") {
  const auto p = gen_logistic_ridge({Family::logistic_ridge, 6, 3, 0.1, 3.0, 8});
  std::vector<ComponentPtr> flipped;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& f = dynamic_cast<const LogisticRidgeComponent&>(p.component(i));
    Vector a = f.row();
    for (double& v : a) v = -v;
    flipped.push_back(std::make_shared<LogisticRidgeComponent>(a, -f.label(), 0.1));
  }
  const auto q = assemble_problem(flipped, p.mu(), p.L(), p.dim());
  const auto g = full_gradient(q, *p.known_solution());
  CHECK(std::sqrt(kernels::squared_norm(g)) <= p.size() * kTolStar);
}

TEST_CASE("libsvm parsing") {
  const auto lp = parse_libsvm("+1 1:1.0\n-1 1:-1.0\n", 1.0);
  CHECK(lp.problem.size() == 2);
  CHECK(lp.problem.dim() == 1);
  CHECK(lp.problem.L() == Approx(1.25).epsilon(1e-15));
  CHECK(lp.data.labels == std::vector<double>{1.0, -1.0});

  const auto sparse = parse_libsvm("# header\n0 2:0.5 4:-1 # trailing\n\n3 1:2\n", 0.1);
  CHECK(sparse.problem.size() == 2);
  CHECK(sparse.problem.dim() == 4);
  CHECK(sparse.data.rows[0] == Vector{0.0, 0.5, 0.0, -1.0});
  CHECK(sparse.data.labels == std::vector<double>{-1.0, 1.0});
  CHECK(sparse.problem.L() == Approx(0.1 + 1.0).epsilon(1e-15));

  CHECK(parse_libsvm("1 1:1\n", 1.0, 3).problem.dim() == 3);
}

TEST_CASE("libsvm errors") {
  CHECK(code_of([] { parse_libsvm("", 1.0); }) == Errc::empty_file);
  CHECK(code_of([] { parse_libsvm("# only a comment\n\n", 1.0); }) == Errc::empty_file);
  CHECK(code_of([] { parse_libsvm("1 1:abc\n", 1.0); }) == Errc::parse_error);
  try {
    parse_libsvm("1 1:abc\n", 1.0);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  try {
    parse_libsvm("1 1:1\n1 2:1 1:3\n", 1.0);
    FAIL("decreasing indices accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(code_of([] { parse_libsvm("1 0:1\n", 1.0); }) == Errc::parse_error);
  CHECK(code_of([] { parse_libsvm("1 5:1\n", 1.0, 3); }) == Errc::inconsistent_dimension);
  CHECK(code_of([] { load_libsvm("/nonexistent/psaga.svm", 1.0); }) == Errc::io_error);
}

TEST_CASE("libsvm file round trip") {
  const std::filesystem::path dir = PSAGA_TEST_TMPDIR;
  std::filesystem::create_directories(dir);
  const auto path = dir / "two_rows.svm";
  std::ofstream(path) << "+1 1:1.0\n-1 1:-1.0\n";
  const auto lp = load_libsvm(path, 1.0);
  CHECK(lp.problem.size() == 2);
  CHECK(lp.problem.L() == Approx(1.25));
}

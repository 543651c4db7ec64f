#include <cmath>

#include "doctest.h"
#include "psaga/components.hpp"
#include "psaga/error.hpp"
#include "psaga/kernels.hpp"
#include "psaga/problems.hpp"

using namespace psaga;

namespace {

ComponentPtr half_sq_norm(std::size_t d) {
  return std::make_shared<QuadraticComponent>(Eigen::MatrixXd::Identity(d, d),
                                              Eigen::VectorXd::Zero(d));
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected psaga::Error");
  return Errc::invalid_config;
}

}  // namespace

TEST_CASE("identity quadratic is a valid single-component problem") {
  const auto p = assemble_problem({half_sq_norm(2)}, 1.0, 1.0, 2);
  CHECK(p.size() == 1);
  CHECK(p.dim() == 2);
  CHECK(p.mu() == 1.0);
  CHECK(p.L() == 1.0);
}

TEST_CASE("assembly validates its inputs") {
  CHECK(code_of([] { assemble_problem({}, 1.0, 2.0, 2); }) == Errc::empty_component_list);
  CHECK(code_of([] { assemble_problem({half_sq_norm(2)}, 2.0, 1.0, 2); }) ==
        Errc::invalid_constants);
  CHECK(code_of([] { assemble_problem({half_sq_norm(2)}, 0.0, 1.0, 2); }) ==
        Errc::invalid_constants);
  CHECK(code_of([] { assemble_problem({half_sq_norm(2), half_sq_norm(3)}, 1.0, 1.0, 2); }) ==
        Errc::dimension_mismatch);
}

TEST_CASE("full gradient sums the components") {
  const auto one = assemble_problem({half_sq_norm(2)}, 1.0, 1.0, 2);
  CHECK(full_gradient(one, Vector{3.0, 0.0}) == Vector{3.0, 0.0});
  const auto two = assemble_problem({half_sq_norm(2), half_sq_norm(2)}, 1.0, 1.0, 2);
  CHECK(full_gradient(two, Vector{1.0, 1.0}) == Vector{2.0, 2.0});
}

TEST_CASE("full gradient vanishes at a planted solution") {
  const auto p = gen_quadratic({Family::quadratic, 8, 4, 1.0, 10.0, 3});
  REQUIRE(p.known_solution().has_value());
  const auto g = full_gradient(p, *p.known_solution());
  CHECK(std::sqrt(kernels::squared_norm(g)) <= p.size() * kTolStar);
}

TEST_CASE("a non-stationary known solution is rejected") {
  const auto p = assemble_problem({half_sq_norm(2)}, 1.0, 1.0, 2);
  CHECK_NOTHROW(p.with_known_solution({0.0, 0.0}));
  CHECK(code_of([&] { p.with_known_solution({1.0, 0.0}); }) == Errc::not_stationary);
}

TEST_CASE("error messages carry the kind name") {
  try {
    fail(Errc::invalid_batch_size, "s=60 exceeds n=50");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("InvalidBatchSize") != std::string::npos);
  }
}

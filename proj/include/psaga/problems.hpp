#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "psaga/problem.hpp"

namespace psaga {

enum class Family { quadratic, ridge_regression, logistic_ridge };

std::string_view to_string(Family f);

struct GeneratorSpec {
  Family family = Family::quadratic;
  std::size_t n = 1;
  std::size_t dim = 1;
  double mu = 1.0;
  double L = 1.0;
  std::uint64_t seed = 0;
};

struct Dataset {
  std::vector<Vector> rows;
  std::vector<double> labels;
};

struct LoadedProblem {
  Dataset data;
  FiniteSumProblem problem;
};

/// f_i(x) = 1/2 (x - c_i)' A_i (x - c_i), A_i = Q_i D_i Q_i' with Q_i a random
/// orthogonal matrix and D_i drawn from [mu, L] with both endpoints present.
/// The planted minimizer solves sum A_i x = sum A_i c_i.
FiniteSumProblem gen_quadratic(const GeneratorSpec& spec);

/// f_i(x) = 1/2 (a_i'x - y_i)^2 + mu/2 ||x||^2 with ||a_i||^2 = L - mu, so each
/// component has Hessian spectrum {mu, L} exactly.
FiniteSumProblem gen_ridge_regression(const GeneratorSpec& spec);

/// f_i(x) = log(1 + exp(-y_i a_i'x)) + mu/2 ||x||^2 with ||a_i||^2 = 4 (L - mu).
FiniteSumProblem gen_logistic_ridge(const GeneratorSpec& spec);

/// Dispatches on spec.family.
FiniteSumProblem generate(const GeneratorSpec& spec);

/// Reads "label idx:val idx:val ..." lines (one-based, strictly increasing
/// indices, '#' starts a comment) into logistic-ridge components. Positive
/// labels map to +1 and the rest to -1. L = mu + max_i ||a_i||^2 / 4.
/// When expected_dim is set, rows are densified to it and a larger index is
/// inconsistent_dimension; otherwise the largest index seen sets the dimension.
LoadedProblem load_libsvm(const std::filesystem::path& path, double mu,
                          std::optional<std::size_t> expected_dim = std::nullopt);

/// Same parser over an in-memory buffer.
LoadedProblem parse_libsvm(std::string_view text, double mu,
                           std::optional<std::size_t> expected_dim = std::nullopt);

}  // namespace psaga

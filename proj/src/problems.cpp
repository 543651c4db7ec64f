#include "psaga/problems.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "psaga/analysis.hpp"
#include "psaga/components.hpp"
#include "psaga/error.hpp"
#include "psaga/kernels.hpp"
#include "psaga/rng.hpp"

namespace psaga {
namespace {

void check_spec(const GeneratorSpec& spec, Family expected, bool strict_gap) {
  if (spec.family != expected)
    fail(Errc::invalid_spec, "generator called with family " + std::string(to_string(spec.family)));
  if (spec.n < 1 || spec.dim < 1) fail(Errc::invalid_spec, "n and dim must be positive");
  if (!(spec.mu > 0.0) || !(spec.L >= spec.mu) || !std::isfinite(spec.L))
    fail(Errc::invalid_spec, "need 0 < mu <= L");
  if (strict_gap && !(spec.mu < spec.L))
    fail(Errc::invalid_spec, "mu >= L leaves no room for the data term");
}

Eigen::VectorXd gaussian(Rng& rng, std::size_t d) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = rng.normal();
  return v;
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
// of R's diagonal folded into Q.
Eigen::MatrixXd random_orthogonal(Rng& rng, std::size_t d) {
  const auto di = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd G(di, di);
  for (Eigen::Index c = 0; c < di; ++c)
    for (Eigen::Index r = 0; r < di; ++r) G(r, c) = rng.normal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < di; ++c)
    if (R(c, c) < 0.0) Q.col(c) *= -1.0;
  return Q;
}

// Gaussian direction rescaled to the given squared norm.
Vector row_with_norm_sq(Rng& rng, std::size_t d, double norm_sq) {
  Eigen::VectorXd v = gaussian(rng, d);
  while (v.norm() == 0.0) v = gaussian(rng, d);
  v *= std::sqrt(norm_sq) / v.norm();
  return Vector(v.data(), v.data() + v.size());
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::quadratic: return "quadratic";
    case Family::ridge_regression: return "ridge_regression";
    case Family::logistic_ridge: return "logistic_ridge";
  }
  return "unknown";
}

FiniteSumProblem gen_quadratic(const GeneratorSpec& spec) {
  check_spec(spec, Family::quadratic, false);
  if (spec.dim == 1 && spec.mu < spec.L)
    fail(Errc::invalid_spec, "a 1-d quadratic cannot have both mu and L as eigenvalues");
  Rng rng(spec.seed);
  const auto di = static_cast<Eigen::Index>(spec.dim);

  std::vector<ComponentPtr> components;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(di, di);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(di);
  for (std::size_t i = 0; i < spec.n; ++i) {
    Eigen::VectorXd D(di);
    D[0] = spec.mu;
    if (di > 1) D[1] = spec.L;
    for (Eigen::Index k = 2; k < di; ++k) D[k] = rng.uniform(spec.mu, spec.L);
    const Eigen::MatrixXd Q = random_orthogonal(rng, spec.dim);
    Eigen::MatrixXd A = Q * D.asDiagonal() * Q.transpose();
    A = 0.5 * (A + A.transpose()).eval();
    const Eigen::VectorXd c = gaussian(rng, spec.dim);
    H += A;
    rhs += A * c;
    components.push_back(
        std::make_shared<QuadraticComponent>(QuadraticComponent::centered(A, c)));
  }
  FiniteSumProblem p = assemble_problem(std::move(components), spec.mu, spec.L, spec.dim);
  const Eigen::VectorXd x_star = H.llt().solve(rhs);
  return p.with_known_solution(Vector(x_star.data(), x_star.data() + x_star.size()));
}

FiniteSumProblem gen_ridge_regression(const GeneratorSpec& spec) {
  check_spec(spec, Family::ridge_regression, true);
  Rng rng(spec.seed);
  const Eigen::VectorXd w = gaussian(rng, spec.dim);
  std::vector<ComponentPtr> components;
  for (std::size_t i = 0; i < spec.n; ++i) {
    Vector a = row_with_norm_sq(rng, spec.dim, spec.L - spec.mu);
    const double y = as_eigen(cspan(a)).dot(w) + 0.1 * rng.normal();
    components.push_back(std::make_shared<RidgeComponent>(std::move(a), y, spec.mu));
  }
  FiniteSumProblem p = assemble_problem(std::move(components), spec.mu, spec.L, spec.dim);
  const Reference ref = reference_solution(p);  // direct solve: all components quadratic
  return p.with_known_solution(ref.x_star);
}

FiniteSumProblem gen_logistic_ridge(const GeneratorSpec& spec) {
  check_spec(spec, Family::logistic_ridge, true);
  Rng rng(spec.seed);
  const Eigen::VectorXd w = gaussian(rng, spec.dim) / std::sqrt(static_cast<double>(spec.dim));
  std::vector<ComponentPtr> components;
  for (std::size_t i = 0; i < spec.n; ++i) {
    Vector a = row_with_norm_sq(rng, spec.dim, 4.0 * (spec.L - spec.mu));
    const double margin = as_eigen(cspan(a)).dot(w) + rng.normal();
    const double y = margin >= 0.0 ? 1.0 : -1.0;
    components.push_back(std::make_shared<LogisticRidgeComponent>(std::move(a), y, spec.mu));
  }
  FiniteSumProblem p = assemble_problem(std::move(components), spec.mu, spec.L, spec.dim);
  const Reference ref = reference_solution(p, 1e-12);
  return p.with_known_solution(ref.x_star);
}

FiniteSumProblem generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::quadratic: return gen_quadratic(spec);
    case Family::ridge_regression: return gen_ridge_regression(spec);
    case Family::logistic_ridge: return gen_logistic_ridge(spec);
  }
  fail(Errc::invalid_spec, "unknown family");
}

LoadedProblem parse_libsvm(std::string_view text, double mu,
                           std::optional<std::size_t> expected_dim) {
  if (!(mu > 0.0) || !std::isfinite(mu)) fail(Errc::invalid_constants, "mu must be positive");

  struct SparseRow {
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<SparseRow> sparse;
  Dataset data;
  std::size_t max_index = 0;

  auto parse_error = [](std::size_t line, const std::string& what) {
    fail(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
  };
  auto to_double = [&](std::string_view tok, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
      parse_error(line, "bad number '" + std::string(tok) + "'");
    return v;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::istringstream tokens{std::string(line)};
    std::string tok;
    if (!(tokens >> tok)) continue;
    // from_chars rejects a leading '+'
    std::string_view label_tok(tok);
    if (label_tok.size() > 1 && label_tok.front() == '+') label_tok.remove_prefix(1);
    const double label = to_double(label_tok, line_no);

    SparseRow row;
    std::size_t last = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) parse_error(line_no, "expected idx:val, got '" + tok + "'");
      const std::string_view idx_tok(tok.data(), colon);
      std::size_t idx = 0;
      const auto [ptr, ec] = std::from_chars(idx_tok.data(), idx_tok.data() + idx_tok.size(), idx);
      if (ec != std::errc() || ptr != idx_tok.data() + idx_tok.size() || idx == 0)
        parse_error(line_no, "bad feature index '" + std::string(idx_tok) + "'");
      if (idx <= last) parse_error(line_no, "feature indices must be strictly increasing");
      last = idx;
      const double v = to_double(std::string_view(tok).substr(colon + 1), line_no);
      if (expected_dim && idx > *expected_dim)
        fail(Errc::inconsistent_dimension, "line " + std::to_string(line_no) + ": index " +
                                               std::to_string(idx) + " exceeds dimension " +
                                               std::to_string(*expected_dim));
      max_index = std::max(max_index, idx);
      row.entries.emplace_back(idx, v);
    }
    sparse.push_back(std::move(row));
    data.labels.push_back(label > 0.0 ? 1.0 : -1.0);
  }
  if (sparse.empty()) fail(Errc::empty_file, "no data rows");

  const std::size_t dim = expected_dim.value_or(std::max<std::size_t>(max_index, 1));
  double max_norm_sq = 0.0;
  std::vector<ComponentPtr> components;
  for (std::size_t i = 0; i < sparse.size(); ++i) {
    Vector a(dim, 0.0);
    for (const auto& [idx, v] : sparse[i].entries) a[idx - 1] = v;
    max_norm_sq = std::max(max_norm_sq, kernels::squared_norm(a));
    components.push_back(std::make_shared<LogisticRidgeComponent>(a, data.labels[i], mu));
    data.rows.push_back(std::move(a));
  }
  const double L = mu + 0.25 * max_norm_sq;
  return {std::move(data), assemble_problem(std::move(components), mu, L, dim)};
}

LoadedProblem load_libsvm(const std::filesystem::path& path, double mu,
                          std::optional<std::size_t> expected_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libsvm(buf.str(), mu, expected_dim);
}

}  // namespace psaga

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psaga/analysis.hpp"
#include "psaga/rng.hpp"
#include "psaga/solver.hpp"

namespace psaga {

enum class VerifyScale { quick, full };

struct VerifyOptions {
  VerifyScale scale = VerifyScale::quick;
  /// Injected into every solver run the suites perform.
  Fault fault = Fault::none;
  std::uint64_t seed = 20240101;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// State with x = x_star + scale * N(0, I), g_i = grad_star_i + scale * N(0, I)
/// and g_avg the exact table mean.
SolverState random_state(const Reference& reference, Rng& rng, double scale = 1.0);

SuiteResult suite_prox_residuals(const VerifyOptions& opts);
SuiteResult suite_firm_nonexpansiveness(const VerifyOptions& opts);
SuiteResult suite_average_drift(const VerifyOptions& opts);
SuiteResult suite_coercivity(const VerifyOptions& opts);
SuiteResult suite_exhaustive_contraction(const VerifyOptions& opts);
SuiteResult suite_rate_dominance(const VerifyOptions& opts);
SuiteResult suite_full_batch_determinism(const VerifyOptions& opts);

/// Every suite above, in declaration order.
std::vector<SuiteResult> run_verification(const VerifyOptions& opts);

}  // namespace psaga

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psaga {

enum class Errc {
  empty_component_list,
  invalid_constants,
  dimension_mismatch,
  singular_system,
  max_inner_iterations,
  invalid_batch_size,
  enumeration_too_large,
  missing_provided_gradients,
  prox_failure,
  max_iterations,
  eps_not_below_psi0,
  invalid_spec,
  parse_error,
  empty_file,
  inconsistent_dimension,
  not_stationary,
  invalid_config,
  io_error,
};

/// CamelCase name of an error kind, as printed in diagnostics.
std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace psaga

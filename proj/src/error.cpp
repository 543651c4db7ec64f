#include "psaga/error.hpp"

namespace psaga {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::empty_component_list: return "EmptyComponentList";
    case Errc::invalid_constants: return "InvalidConstants";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::singular_system: return "SingularSystem";
    case Errc::max_inner_iterations: return "MaxInnerIterations";
    case Errc::invalid_batch_size: return "InvalidBatchSize";
    case Errc::enumeration_too_large: return "EnumerationTooLarge";
    case Errc::missing_provided_gradients: return "MissingProvidedGradients";
    case Errc::prox_failure: return "ProxFailure";
    case Errc::max_iterations: return "MaxIterations";
    case Errc::eps_not_below_psi0: return "EpsNotBelowPsi0";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::parse_error: return "ParseError";
    case Errc::empty_file: return "EmptyFile";
    case Errc::inconsistent_dimension: return "InconsistentDimension";
    case Errc::not_stationary: return "NotStationary";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace psaga

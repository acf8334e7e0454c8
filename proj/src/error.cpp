#include "kronrod/error.hpp"

namespace kronrod {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_cardinality: return "invalid_cardinality";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::undefined_distance: return "undefined_distance";
    case Errc::unsupported_cardinality: return "unsupported_cardinality";
    case Errc::shape_mismatch: return "shape_mismatch";
    case Errc::mode_out_of_range: return "mode_out_of_range";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::invalid_symbol: return "invalid_symbol";
    case Errc::invalid_config: return "invalid_config";
    case Errc::degenerate_input: return "degenerate_input";
    case Errc::pilot_erasure: return "pilot_erasure";
    case Errc::framing: return "framing";
    case Errc::domain: return "domain";
    case Errc::extrapolation: return "extrapolation";
  }
  return "unknown";
}

}  // namespace kronrod

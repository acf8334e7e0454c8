#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kronrod {

enum class Errc {
  invalid_cardinality,
  invalid_argument,
  undefined_distance,
  unsupported_cardinality,
  shape_mismatch,
  mode_out_of_range,
  length_mismatch,
  invalid_symbol,
  invalid_config,
  degenerate_input,
  pilot_erasure,
  framing,
  domain,
  extrapolation,
};

std::string_view errc_name(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kronrod

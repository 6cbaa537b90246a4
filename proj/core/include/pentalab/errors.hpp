#pragma once

#include <stdexcept>
#include <string>

namespace pentalab {

enum class errc {
  degenerate_curve,
  step_too_coarse,
  ill_conditioned_frame,
  unexpected_dimension,
  non_liftable,
  invalid_offsets,
  degenerate_ansatz,
  not_monic,
  missing_normalization,
  floor_underflow,
  unsupported_dimension,
  repeated_entries,
  division_by_zero,
  degenerate_planes,
  chart_failure,
  no_clean_order,
  bad_input,
};

const char* errc_name(errc c);

/// Every failure mode carries a code so callers can dispatch without
/// parsing messages.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pentalab

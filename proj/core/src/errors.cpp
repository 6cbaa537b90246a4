#include "pentalab/errors.hpp"

namespace pentalab {

const char* errc_name(errc c) {
  switch (c) {
    case errc::degenerate_curve: return "DegenerateCurve";
    case errc::step_too_coarse: return "StepTooCoarse";
    case errc::ill_conditioned_frame: return "IllConditionedFrame";
    case errc::unexpected_dimension: return "UnexpectedDimension";
    case errc::non_liftable: return "NonLiftable";
    case errc::invalid_offsets: return "InvalidOffsets";
    case errc::degenerate_ansatz: return "DegenerateAnsatz";
    case errc::not_monic: return "NotMonic";
    case errc::missing_normalization: return "MissingNormalization";
    case errc::floor_underflow: return "FloorUnderflow";
    case errc::unsupported_dimension: return "UnsupportedDimension";
    case errc::repeated_entries: return "RepeatedEntries";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::degenerate_planes: return "DegeneratePlanes";
    case errc::chart_failure: return "ChartFailure";
    case errc::no_clean_order: return "NoCleanOrder";
    case errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

}  // namespace pentalab

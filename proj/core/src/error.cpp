#include "ardlkit/error.hpp"

namespace ardlkit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::empty_body: return "EmptyBody";
    case ErrorCode::missing_header: return "MissingHeader";
    case ErrorCode::ragged_rows: return "RaggedRows";
    case ErrorCode::non_numeric_cell: return "NonNumericCell";
    case ErrorCode::duplicate_years: return "DuplicateYears";
    case ErrorCode::non_monotone_years: return "NonMonotoneYears";
    case ErrorCode::non_unit_step: return "NonUnitStep";
    case ErrorCode::unknown_column: return "UnknownColumn";
    case ErrorCode::non_positive_value: return "NonPositiveValue";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::series_too_short: return "SeriesTooShort";
    case ErrorCode::too_few_observations: return "TooFewObservations";
    case ErrorCode::rank_deficient: return "RankDeficient";
    case ErrorCode::bandwidth_too_large: return "BandwidthTooLarge";
    case ErrorCode::invalid_df: return "InvalidDf";
    case ErrorCode::degenerate_series: return "DegenerateSeries";
    case ErrorCode::degenerate_residuals: return "DegenerateResiduals";
    case ErrorCode::all_zero_residuals: return "AllZeroResiduals";
    case ErrorCode::near_singular_adjustment: return "NearSingularAdjustment";
    case ErrorCode::singular_omega22: return "SingularOmega22";
    case ErrorCode::no_feasible_spec: return "NoFeasibleSpec";
    case ErrorCode::replication_failures: return "ReplicationFailures";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::possible_i2: return "PossibleI2";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::empty_body:
    case ErrorCode::missing_header:
    case ErrorCode::ragged_rows:
    case ErrorCode::non_numeric_cell:
    case ErrorCode::duplicate_years:
    case ErrorCode::non_monotone_years:
    case ErrorCode::non_unit_step:
    case ErrorCode::unknown_column:
    case ErrorCode::non_positive_value:
    case ErrorCode::io_error:
      return ErrorCategory::data;
    case ErrorCode::possible_i2:
      return ErrorCategory::precondition;
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_params:
      return ErrorCategory::usage;
    default:
      return ErrorCategory::numerical;
  }
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace ardlkit

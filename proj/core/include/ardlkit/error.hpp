#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ardlkit {

enum class ErrorCode {
  // data ingestion
  empty_body,
  missing_header,
  ragged_rows,
  non_numeric_cell,
  duplicate_years,
  non_monotone_years,
  non_unit_step,
  unknown_column,
  non_positive_value,
  io_error,
  // numerical
  series_too_short,
  too_few_observations,
  rank_deficient,
  bandwidth_too_large,
  invalid_df,
  degenerate_series,
  degenerate_residuals,
  all_zero_residuals,
  near_singular_adjustment,
  singular_omega22,
  no_feasible_spec,
  replication_failures,
  invalid_params,
  // preconditions
  possible_i2,
  invalid_argument,
};

/// Coarse grouping used by the command-line tool to pick an exit status.
enum class ErrorCategory { usage, data, numerical, precondition };

std::string_view to_string(ErrorCode code) noexcept;
ErrorCategory category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by least squares when the design has linearly dependent columns.
/// `columns` lists design-column indices found to be redundant, in pivot order.
class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& message, std::vector<std::size_t> columns)
      : Error(ErrorCode::rank_deficient, message), columns_(std::move(columns)) {}

  [[nodiscard]] const std::vector<std::size_t>& columns() const noexcept { return columns_; }

 private:
  std::vector<std::size_t> columns_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace ardlkit

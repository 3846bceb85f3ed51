#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ardlkit {

/// Annual observations indexed by year, with named real-valued columns.
///
/// The constructor enforces the frame invariants: at least one row, a strictly
/// increasing unit-step year index, equal-length columns, unique column names
/// and finite values.
class TimeSeriesFrame {
 public:
  TimeSeriesFrame(std::vector<int> years, std::vector<std::string> names,
                  std::vector<std::vector<double>> columns);

  [[nodiscard]] std::size_t size() const noexcept { return years_.size(); }
  [[nodiscard]] std::span<const int> years() const noexcept { return years_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

  [[nodiscard]] bool contains(std::string_view name) const noexcept;
  /// Throws Error(UnknownColumn) when `name` is absent.
  [[nodiscard]] std::span<const double> column(std::string_view name) const;

  /// Copy of this frame with `name` appended, or replaced if it already exists.
  [[nodiscard]] TimeSeriesFrame with_column(const std::string& name,
                                            std::vector<double> values) const;

  /// Copy restricted to the named columns, in the given order.
  [[nodiscard]] TimeSeriesFrame select(std::span<const std::string> names) const;

  friend bool operator==(const TimeSeriesFrame&, const TimeSeriesFrame&) = default;

 private:
  std::vector<int> years_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
};

/// Parses `year,<name>,...` CSV. Each kind of malformed input raises a distinct
/// ErrorCode (RaggedRows, NonNumericCell, DuplicateYears, NonMonotoneYears,
/// NonUnitStep, EmptyBody, MissingHeader).
TimeSeriesFrame load_csv(std::istream& in);
TimeSeriesFrame load_csv(std::string_view text);
TimeSeriesFrame load_csv_file(const std::filesystem::path& path);

/// Writes the frame back as CSV using shortest round-trip number formatting.
std::string to_csv(const TimeSeriesFrame& frame);

/// Appends `L<name>` columns holding the natural log of each named column.
TimeSeriesFrame natural_log(const TimeSeriesFrame& frame, std::span<const std::string> names);

/// d-th order difference; result has length n - d.
std::vector<double> difference(std::span<const double> series, int order = 1);

/// (n - k) x k matrix whose column j is the series lagged j + 1 periods,
/// row i aligned to observation k + i.
Eigen::MatrixXd lag_matrix(std::span<const double> series, int max_lag);

enum class Deterministic { constant, constant_trend };

/// Significance levels supported throughout the library.
enum class Significance { p01, p025, p05, p10 };

inline constexpr Significance kAllLevels[] = {Significance::p01, Significance::p025,
                                              Significance::p05, Significance::p10};

double alpha(Significance level) noexcept;
std::string_view label(Significance level) noexcept;
std::string_view to_string(Deterministic d) noexcept;
/// Accepts 0.01, 0.025, 0.05 and 0.10 (within 1e-12); throws InvalidArgument otherwise.
Significance significance_from_alpha(double a);

/// Log-linear model template: dependent variable, ordered regressors, lag
/// bounds for ARDL selection and the deterministic terms for unit-root tests.
struct ModelSpec {
  std::string dependent;
  std::vector<std::string> regressors;
  int max_p = 2;
  int max_q = 2;
  Deterministic deterministic = Deterministic::constant;
  Significance level = Significance::p05;

  /// Throws InvalidArgument/UnknownColumn if the spec does not fit `frame`.
  void validate(const TimeSeriesFrame& frame) const;
  [[nodiscard]] std::size_t k() const noexcept { return regressors.size(); }
};

}  // namespace ardlkit

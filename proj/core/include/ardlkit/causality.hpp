#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ardlkit/frame.hpp"
#include "ardlkit/regression.hpp"

namespace ardlkit {

/// Null hypothesis: `cause` does not Granger-cause `effect`.
struct CausalityReport {
  std::string cause;
  std::string effect;
  int lag = 0;
  Eigen::Index nobs = 0;
  double f_stat = 0.0;
  double p_value = 1.0;
  std::optional<std::string> error;  // set when the pair could not be tested

  [[nodiscard]] bool ok() const noexcept { return !error.has_value(); }
  [[nodiscard]] bool rejects(Significance level) const noexcept { return ok() && p_value < alpha(level); }
  friend bool operator==(const CausalityReport&, const CausalityReport&) = default;
};

/// F test of the x-lag block in y_t = c + sum a_j y_{t-j} + sum b_j x_{t-j} + e_t.
CausalityReport granger_pair(std::span<const double> x, std::span<const double> y, int lag,
                             std::string cause = "x", std::string effect = "y");

/// Lag in 1..max_lag minimising the criterion of the unrestricted regression
/// on the common sample.
int select_granger_lag(std::span<const double> x, std::span<const double> y, int max_lag = 4,
                       InfoCriterion criterion = InfoCriterion::aic);

/// Both directions for every variable against `dependent`: (v -> dependent)
/// then (dependent -> v), in input order. A failing pair is reported with
/// `error` set; the remaining pairs are unaffected. An empty `lag` selects it
/// per pair with select_granger_lag.
std::vector<CausalityReport> causality_matrix(const TimeSeriesFrame& frame,
                                              std::span<const std::string> variables,
                                              const std::string& dependent, std::optional<int> lag = {},
                                              int jobs = 1);

enum class CausalDirection { none, to_dependent, from_dependent, bidirectional };

std::string_view to_string(CausalDirection d) noexcept;

/// Classifies a pair from (v -> dependent) and (dependent -> v) reports.
CausalDirection classify(const CausalityReport& to_dependent, const CausalityReport& from_dependent,
                         Significance level = Significance::p05) noexcept;

}  // namespace ardlkit

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ardlkit/frame.hpp"
#include "ardlkit/long_run.hpp"
#include "ardlkit/regression.hpp"

namespace ardlkit {

enum class UnitRootTest { adf, pp, dfgls };

std::string_view to_string(UnitRootTest test) noexcept;

/// Left-tail critical values; cv(1%) < cv(5%) < cv(10%).
struct CriticalValues {
  double pct1 = 0.0;
  double pct5 = 0.0;
  double pct10 = 0.0;

  /// Value for a tabulated level. 2.5% is not tabulated and maps to the
  /// stricter 1% value.
  [[nodiscard]] double at(Significance level) const noexcept;
  friend bool operator==(const CriticalValues&, const CriticalValues&) = default;
};

/// Deterministic terms in a Dickey-Fuller regression. `none` is only used
/// internally by DF-GLS after detrending.
enum class DfTerms { none, constant, constant_trend };

/// MacKinnon (2010) response surface, one I(1) variable:
/// cv = b0 + b1/T + b2/T^2 + b3/T^3.
CriticalValues mackinnon_critical_values(DfTerms terms, Eigen::Index nobs);

/// DF-GLS critical values. The constant case shares the no-deterministic DF
/// distribution (MacKinnon response surface); the trend case interpolates the
/// Elliott-Rothenberg-Stock table in 1/T.
CriticalValues dfgls_critical_values(Deterministic deterministic, Eigen::Index nobs);

struct UnitRootReport {
  std::string variable;
  UnitRootTest test = UnitRootTest::adf;
  Deterministic deterministic = Deterministic::constant;
  int lag_or_bandwidth = 0;
  double statistic = 0.0;
  CriticalValues critical;
  Eigen::Index nobs = 0;

  [[nodiscard]] bool rejects(Significance level) const noexcept {
    return statistic < critical.at(level);
  }
  /// "***", "**", "*" or "" for rejection at 1%, 5%, 10%.
  [[nodiscard]] std::string stars() const;
  friend bool operator==(const UnitRootReport&, const UnitRootReport&) = default;
};

int default_max_lag(std::size_t n);

struct AdfOptions {
  Deterministic deterministic = Deterministic::constant;
  std::optional<int> max_lag;  // default floor(12 (n/100)^0.25)
  InfoCriterion criterion = InfoCriterion::aic;
  std::optional<int> fixed_lag;  // bypasses selection when set
};

/// Augmented Dickey-Fuller test. The lag is chosen by `criterion` over
/// 0..max_lag on a common sample, then the chosen regression is refit on the
/// longest sample it permits.
UnitRootReport adf(std::span<const double> series, const AdfOptions& options = {},
                   std::string variable = {});

/// Phillips-Perron Z_t: unaugmented DF regression with a Bartlett long-run
/// variance correction of the t-ratio.
UnitRootReport pp(std::span<const double> series, Deterministic deterministic = Deterministic::constant,
                  const KernelSpec& kernel = {}, std::string variable = {});

/// GLS-detrended series used by DF-GLS (quasi-difference parameter
/// a = 1 + cbar/T, cbar = -7 for constant, -13.5 for constant + trend).
std::vector<double> gls_detrend(std::span<const double> series, Deterministic deterministic);
double dfgls_quasi_difference(Deterministic deterministic, std::size_t n) noexcept;

/// DF-GLS: no-deterministic DF regression on the GLS-detrended series. The lag
/// is selected on the OLS-detrended series, which the criterion handles without
/// the level offset GLS detrending leaves behind.
UnitRootReport dfgls(std::span<const double> series, const AdfOptions& options = {},
                     std::string variable = {});

/// t-ratio on y_{t-1} in the DF regression with `lags` augmentation terms,
/// fitted on the longest available sample. Exposed for decomposition tests.
struct DfRegression {
  RegressionResult fit;
  double t_stat = 0.0;
  int lags = 0;
};
DfRegression df_regression(std::span<const double> series, DfTerms terms, int lags);

/// Lag selection for the DF regression over 0..max_lag on a common sample.
int select_df_lag(std::span<const double> series, DfTerms terms, int max_lag, InfoCriterion criterion);

enum class IntegrationOrder { I0, I1 };
std::string_view to_string(IntegrationOrder order) noexcept;

struct IntegrationDecision {
  std::string variable;
  IntegrationOrder order = IntegrationOrder::I1;
  UnitRootReport level;
  UnitRootReport difference;
};

/// I0 when the level test rejects, I1 when only the difference test rejects.
/// Throws PossibleI2 when neither rejects.
IntegrationDecision integration_order(const UnitRootReport& level, const UnitRootReport& difference,
                                      Significance alpha_level = Significance::p05);

}  // namespace ardlkit

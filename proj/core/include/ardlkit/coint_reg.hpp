#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ardlkit/frame.hpp"
#include "ardlkit/long_run.hpp"

namespace ardlkit {

enum class CointMethod { ols, fmols, dols, ccr };

std::string_view to_string(CointMethod m) noexcept;

struct CointCoefficient {
  std::string name;
  double coef = 0.0;
  double std_error = 0.0;
  double t_stat = 0.0;
  friend bool operator==(const CointCoefficient&, const CointCoefficient&) = default;
};

/// Long-run estimate of y_t = c + x_t' beta + u_t. Coefficients are listed in
/// regressor order followed by the intercept "C".
struct CointEstimate {
  CointMethod method = CointMethod::ols;
  std::vector<CointCoefficient> coefficients;
  double r2 = 0.0;
  int bandwidth = 0;  // kernel truncation lag used for the long-run variances
  int leads = 0;      // DOLS only
  int lags = 0;       // DOLS only
  double long_run_variance = 0.0;  // omega_{1.2} (FMOLS/CCR) or residual LRV (DOLS)
  Eigen::Index nobs = 0;

  [[nodiscard]] const CointCoefficient& at(std::string_view name) const;
  friend bool operator==(const CointEstimate&, const CointEstimate&) = default;
};

/// Static OLS on the same sample FMOLS and CCR use (the first observation is
/// dropped to form dx). Conventional OLS standard errors.
CointEstimate static_ols(const TimeSeriesFrame& frame, const ModelSpec& spec);

/// Fully modified OLS (Phillips-Hansen).
CointEstimate fmols(const TimeSeriesFrame& frame, const ModelSpec& spec, const KernelSpec& kernel = {});

/// Dynamic OLS (Stock-Watson) with dx_{t+j}, j = -lags..leads. Standard errors
/// rescale (Z'Z)^-1 by the long-run variance of the residuals.
CointEstimate dols(const TimeSeriesFrame& frame, const ModelSpec& spec, int leads = 1, int lags = 1,
                   const KernelSpec& kernel = {});

/// Canonical cointegrating regression (Park).
CointEstimate ccr(const TimeSeriesFrame& frame, const ModelSpec& spec, const KernelSpec& kernel = {});

}  // namespace ardlkit

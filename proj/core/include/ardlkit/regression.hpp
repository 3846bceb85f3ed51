#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ardlkit {

/// Ordinary least squares fit. `xtx_inverse` is kept so callers can build Wald
/// tests, delta-method standard errors and recursive updates without refitting.
struct RegressionResult {
  Eigen::VectorXd coef;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd tstats;
  Eigen::VectorXd residuals;
  double rss = 0.0;
  double tss = 0.0;  // centred total sum of squares
  double r2 = 0.0;
  bool degenerate_r2 = false;  // tss == 0; r2 reported as 0
  Eigen::Index nobs = 0;
  Eigen::Index df_resid = 0;
  double sigma2 = 0.0;  // rss / df_resid
  double loglik = 0.0;
  Eigen::MatrixXd xtx_inverse;

  [[nodiscard]] Eigen::Index k() const noexcept { return coef.size(); }
  [[nodiscard]] Eigen::MatrixXd covariance() const { return sigma2 * xtx_inverse; }
};

/// Relative singular-value cutoff below which a design column counts as dependent.
inline constexpr double kRankTolerance = 1e-10;

/// Least squares through column-pivoted Householder QR.
/// Throws TooFewObservations when n <= k and RankDeficientError (listing the
/// redundant columns) when the smallest singular value of X falls below
/// kRankTolerance times the largest.
RegressionResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

/// Same as ols() but names the offending columns in the rank-deficiency message.
RegressionResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     std::span<const std::string> column_names);

struct WaldResult {
  double f_stat = 0.0;
  double p_value = 1.0;
  int numerator_df = 0;
  Eigen::Index denominator_df = 0;
  bool negative_numerator = false;  // restricted RSS fell below unrestricted beyond 1e-10
};

/// F test that the coefficients in `subset` are jointly zero, given the RSS of
/// the nested restricted regression.
WaldResult wald_f_zero(const RegressionResult& fit, std::span<const std::size_t> subset,
                       double restricted_rss);

enum class InfoCriterion { aic, sic, hq };

/// n ln(rss/n) + penalty(k). A perfect fit (rss == 0) returns -infinity.
double info_criterion(const RegressionResult& fit, InfoCriterion kind);
double info_criterion(double rss, Eigen::Index n, Eigen::Index k, InfoCriterion kind);

std::string_view to_string(InfoCriterion kind) noexcept;
InfoCriterion info_criterion_from_string(std::string_view name);

/// Column-stacks an intercept in front of `X`.
Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& X);

}  // namespace ardlkit

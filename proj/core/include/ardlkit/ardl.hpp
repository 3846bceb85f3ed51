#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ardlkit/frame.hpp"
#include "ardlkit/regression.hpp"

namespace ardlkit {

/// ARDL(p, q_1..q_k) orders: p lags of the dependent variable (p >= 1) and q_i
/// lags of each regressor (q_i >= 0).
struct ArdlOrder {
  int p = 1;
  std::vector<int> q;

  [[nodiscard]] int total() const noexcept;
  /// First usable observation index: max(1, p, max q_i).
  [[nodiscard]] int first_row() const noexcept;
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const ArdlOrder&, const ArdlOrder&) = default;
};

/// Conditional error-correction regression
///   dy_t = c + tau_1 y_{t-1} + sum_i tau_{i+1} x_{i,t-1}
///          + sum_{j=1..p-1} phi_j dy_{t-j} + sum_i sum_{j=0..q_i-1} psi_ij dx_{i,t-j} + e_t
/// with column 0 the intercept, columns 1..k+1 the lagged levels (dependent
/// first) and the remaining columns the short-run differences.
struct ArdlFit {
  ArdlOrder order;
  std::string dependent;
  std::vector<std::string> regressors;
  RegressionResult regression;
  Eigen::MatrixXd design;
  Eigen::VectorXd response;
  std::vector<std::string> column_names;
  std::size_t intercept_index = 0;
  std::vector<std::size_t> level_indices;
  std::vector<std::size_t> diff_indices;
  int first_row = 0;  // frame row of the first estimation observation
};

/// Exhaustive search over p in 1..max_p and q_i in 0..max_q minimising the
/// criterion. All candidates share the estimation sample of the largest model.
/// Ties within 1e-12 go to the smaller p + sum q, then lexicographically smaller
/// (p, q_1, ...). `jobs` > 1 evaluates candidates on worker threads.
ArdlOrder select_ardl_lags(const TimeSeriesFrame& frame, const ModelSpec& spec,
                           InfoCriterion criterion = InfoCriterion::aic, int jobs = 1);

namespace detail {
struct LagCandidate {
  ArdlOrder order;
  double criterion = 0.0;
};
/// True if `a` should be preferred to `b` under the selection tie-break.
bool prefer(const LagCandidate& a, const LagCandidate& b) noexcept;
}  // namespace detail

ArdlFit fit_conditional_ecm(const TimeSeriesFrame& frame, const ModelSpec& spec, const ArdlOrder& order);

enum class BoundsTable { reference_k5, pesaran_case3 };
enum class BoundsDecision { cointegrated, inconclusive, not_cointegrated };

std::string_view to_string(BoundsDecision d) noexcept;
std::string_view to_string(BoundsTable t) noexcept;

struct CriticalBounds {
  double i0 = 0.0;
  double i1 = 0.0;
  friend bool operator==(const CriticalBounds&, const CriticalBounds&) = default;
};

/// Levels in table order: 10%, 5%, 2.5%, 1%.
inline constexpr std::array<Significance, 4> kBoundsLevels{Significance::p10, Significance::p05,
                                                           Significance::p025, Significance::p01};

/// Critical bounds for k regressors. `reference_k5` only covers k = 5; for any
/// other k it falls back to the Pesaran-Shin-Smith case III table, which is
/// reported back through `used`.
std::array<CriticalBounds, 4> bounds_critical_values(BoundsTable table, int k, BoundsTable* used = nullptr);

BoundsDecision decide_bounds(double f_stat, const CriticalBounds& bounds) noexcept;

struct BoundsResult {
  double f_stat = 0.0;
  double p_value = 1.0;  // standard F(m, df) tail, for reference only
  int k = 0;
  BoundsTable table = BoundsTable::reference_k5;
  std::array<CriticalBounds, 4> bounds{};
  std::array<BoundsDecision, 4> decision{};

  [[nodiscard]] BoundsDecision decision_at(Significance level) const noexcept;
  friend bool operator==(const BoundsResult&, const BoundsResult&) = default;
};

BoundsResult bounds_result(double f_stat, int k, BoundsTable table = BoundsTable::reference_k5);

/// Joint F test that every lagged-level coefficient is zero.
BoundsResult bounds_test(const ArdlFit& fit, BoundsTable table = BoundsTable::reference_k5);

struct Estimate {
  std::string name;
  double coef = 0.0;
  double std_error = 0.0;

  [[nodiscard]] double t_stat() const noexcept { return std_error > 0.0 ? coef / std_error : 0.0; }
  friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// LR_i = -tau_{i+1} / tau_1 with delta-method standard errors.
/// Throws NearSingularAdjustment when |tau_1| < 1e-8.
std::vector<Estimate> long_run_coefficients(const ArdlFit& fit);

/// ECT_t = y_t - c' - sum_i LR_i x_{i,t} for every frame row, where c' is the
/// intercept of the static long-run relation over the whole frame.
struct EctSeries {
  std::vector<double> values;
  double intercept = 0.0;
};
EctSeries error_correction_term(const TimeSeriesFrame& frame, const ModelSpec& spec,
                                const std::vector<Estimate>& long_run);

struct EcmResult {
  std::vector<Estimate> long_run;
  std::vector<Estimate> short_run;  // intercept first, then differences
  Estimate ect;
  double r2 = 0.0;
  double ect_intercept = 0.0;
  Eigen::Index nobs = 0;
  bool convergence_warning = false;  // theta outside (-2, 0)
  friend bool operator==(const EcmResult&, const EcmResult&) = default;
};

/// Two-step ECM: regress dy_t on the intercept, the short-run differences of
/// `order` and ECT_{t-1}.
EcmResult fit_ecm(const TimeSeriesFrame& frame, const ModelSpec& spec, const ArdlOrder& order,
                  const std::vector<Estimate>& long_run);

}  // namespace ardlkit

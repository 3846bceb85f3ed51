#include "ardlkit/unit_root.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ardlkit/error.hpp"

namespace ardlkit {
namespace {

// MacKinnon (2010), Table 2, N = 1. Rows: 1%, 5%, 10%; columns b0..b3.
using Surface = std::array<std::array<double, 4>, 3>;
constexpr Surface kMacKinnonNone{{{-2.56574, -2.2358, -3.627, 0.0},
                                  {-1.94100, -0.2686, -3.365, 31.223},
                                  {-1.61682, 0.2656, -2.714, 25.364}}};
constexpr Surface kMacKinnonConstant{{{-3.43035, -6.5393, -16.786, -79.433},
                                      {-2.86154, -2.8903, -4.234, -40.040},
                                      {-2.56677, -1.5384, -2.809, 0.0}}};
constexpr Surface kMacKinnonTrend{{{-3.95877, -9.0531, -28.428, -134.155},
                                   {-3.41049, -4.3904, -9.036, -45.374},
                                   {-3.12705, -2.5856, -3.925, -22.380}}};

// Elliott, Rothenberg & Stock (1996) DF-GLS with linear trend; T = 50, 100, 200, inf.
constexpr std::array<double, 4> kErsInvT{1.0 / 50.0, 1.0 / 100.0, 1.0 / 200.0, 0.0};
constexpr std::array<std::array<double, 4>, 3> kErsTrend{{{-3.77, -3.58, -3.46, -3.48},
                                                          {-3.19, -3.03, -2.93, -2.89},
                                                          {-2.89, -2.74, -2.64, -2.57}}};

double surface(const std::array<double, 4>& b, double T) {
  return b[0] + b[1] / T + b[2] / (T * T) + b[3] / (T * T * T);
}

double ers_interpolate(const std::array<double, 4>& row, double inv_t) {
  if (inv_t >= kErsInvT[0]) return row[0];
  for (std::size_t i = 1; i < kErsInvT.size(); ++i) {
    if (inv_t >= kErsInvT[i]) {
      const double w = (inv_t - kErsInvT[i]) / (kErsInvT[i - 1] - kErsInvT[i]);
      return row[i] + w * (row[i - 1] - row[i]);
    }
  }
  return row.back();
}

DfTerms to_terms(Deterministic d) {
  return d == Deterministic::constant ? DfTerms::constant : DfTerms::constant_trend;
}

int deterministic_columns(DfTerms terms) {
  switch (terms) {
    case DfTerms::none: return 0;
    case DfTerms::constant: return 1;
    case DfTerms::constant_trend: return 2;
  }
  return 0;
}

// Rows t = first..n-1 of the DF regression: dy_t on y_{t-1}, deterministics,
// dy_{t-1..t-lags}. The y_{t-1} column is always column 0.
void build_df(std::span<const double> y, DfTerms terms, int lags, Eigen::Index first,
              Eigen::VectorXd& response, Eigen::MatrixXd& design) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const Eigen::Index rows = n - first;
  const int det = deterministic_columns(terms);
  response.resize(rows);
  design.resize(rows, 1 + det + lags);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto t = static_cast<std::size_t>(first + r);
    response(r) = y[t] - y[t - 1];
    design(r, 0) = y[t - 1];
    if (det >= 1) design(r, 1) = 1.0;
    if (det >= 2) design(r, 2) = static_cast<double>(t);
    for (int j = 1; j <= lags; ++j) {
      design(r, det + j) = y[t - j] - y[t - j - 1];
    }
  }
}

void check_not_degenerate(std::span<const double> y) {
  if (y.size() < 3) fail(ErrorCode::series_too_short, "unit-root test needs at least 3 observations");
  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  const auto dy = difference(y, 1);
  double mean = 0.0;
  for (double v : dy) mean += v;
  mean /= static_cast<double>(dy.size());
  double ss = 0.0;
  for (double v : dy) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(dy.size()));
  if (sd == 0.0 || sd <= 1e-12 * scale) {
    fail(ErrorCode::degenerate_series, "first differences have zero variance");
  }
}

// Residuals of the series on a constant (and trend): the lag-selection input for DF-GLS.
std::vector<double> ols_detrend(std::span<const double> series, Deterministic deterministic) {
  const auto n = static_cast<Eigen::Index>(series.size());
  const Eigen::Index k = deterministic == Deterministic::constant ? 1 : 2;
  Eigen::MatrixXd Z(n, k);
  for (Eigen::Index t = 0; t < n; ++t) {
    Z(t, 0) = 1.0;
    if (k == 2) Z(t, 1) = static_cast<double>(t + 1);
  }
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(series.data(), n);
  const Eigen::VectorXd e = y - Z * Z.colPivHouseholderQr().solve(y);
  return {e.data(), e.data() + n};
}

}  // namespace

std::string_view to_string(UnitRootTest test) noexcept {
  switch (test) {
    case UnitRootTest::adf: return "ADF";
    case UnitRootTest::pp: return "PP";
    case UnitRootTest::dfgls: return "DF-GLS";
  }
  return "ADF";
}

double CriticalValues::at(Significance level) const noexcept {
  switch (level) {
    case Significance::p01:
    case Significance::p025: return pct1;
    case Significance::p05: return pct5;
    case Significance::p10: return pct10;
  }
  return pct5;
}

CriticalValues mackinnon_critical_values(DfTerms terms, Eigen::Index nobs) {
  const Surface* s = &kMacKinnonConstant;
  if (terms == DfTerms::none) s = &kMacKinnonNone;
  if (terms == DfTerms::constant_trend) s = &kMacKinnonTrend;
  const double T = static_cast<double>(nobs);
  return {surface((*s)[0], T), surface((*s)[1], T), surface((*s)[2], T)};
}

CriticalValues dfgls_critical_values(Deterministic deterministic, Eigen::Index nobs) {
  if (deterministic == Deterministic::constant) {
    return mackinnon_critical_values(DfTerms::none, nobs);
  }
  const double inv_t = 1.0 / static_cast<double>(nobs);
  return {ers_interpolate(kErsTrend[0], inv_t), ers_interpolate(kErsTrend[1], inv_t),
          ers_interpolate(kErsTrend[2], inv_t)};
}

std::string UnitRootReport::stars() const {
  if (rejects(Significance::p01)) return "***";
  if (rejects(Significance::p05)) return "**";
  if (rejects(Significance::p10)) return "*";
  return "";
}

int default_max_lag(std::size_t n) {
  return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

DfRegression df_regression(std::span<const double> series, DfTerms terms, int lags) {
  if (lags < 0) fail(ErrorCode::invalid_argument, "lag must be >= 0");
  const auto n = static_cast<Eigen::Index>(series.size());
  const Eigen::Index first = lags + 1;
  if (n - first <= 1 + deterministic_columns(terms) + lags) {
    fail(ErrorCode::series_too_short, fmt::format("{} observations cannot support {} lags", n, lags));
  }
  Eigen::VectorXd response;
  Eigen::MatrixXd design;
  build_df(series, terms, lags, first, response, design);
  DfRegression out{ols(response, design), 0.0, lags};
  out.t_stat = out.fit.tstats(0);
  return out;
}

int select_df_lag(std::span<const double> series, DfTerms terms, int max_lag, InfoCriterion criterion) {
  if (max_lag < 0) fail(ErrorCode::invalid_argument, "max lag must be >= 0");
  const auto n = static_cast<Eigen::Index>(series.size());
  const Eigen::Index first = max_lag + 1;
  if (n - first <= 1 + deterministic_columns(terms) + max_lag) {
    fail(ErrorCode::series_too_short,
         fmt::format("{} observations cannot support max lag {}", n, max_lag));
  }
  Eigen::VectorXd response;
  Eigen::MatrixXd design;
  build_df(series, terms, max_lag, first, response, design);
  int best = -1;
  double best_ic = std::numeric_limits<double>::infinity();
  const int det = deterministic_columns(terms);
  for (int p = 0; p <= max_lag; ++p) {
    try {
      const auto fit = ols(response, design.leftCols(1 + det + p));
      const double ic = info_criterion(fit, criterion);
      if (best < 0 || ic < best_ic) {
        best = p;
        best_ic = ic;
      }
    } catch (const RankDeficientError&) {
      // longer augmentations can only add dependence; keep the best so far
    }
  }
  if (best < 0) fail(ErrorCode::degenerate_series, "no lag order yields a full-rank DF regression");
  return best;
}

UnitRootReport adf(std::span<const double> series, const AdfOptions& options, std::string variable) {
  check_not_degenerate(series);
  const int max_lag = options.max_lag.value_or(default_max_lag(series.size()));
  if (options.fixed_lag && *options.fixed_lag < 0) fail(ErrorCode::invalid_argument, "lag must be >= 0");
  const int needed = options.fixed_lag ? *options.fixed_lag : max_lag;
  if (series.size() < static_cast<std::size_t>(needed) + 10) {
    fail(ErrorCode::series_too_short,
         fmt::format("ADF needs n >= max_lag + 10 ({} < {})", series.size(), needed + 10));
  }
  const DfTerms terms = to_terms(options.deterministic);
  const int lag =
      options.fixed_lag ? *options.fixed_lag : select_df_lag(series, terms, max_lag, options.criterion);
  const auto reg = df_regression(series, terms, lag);

  UnitRootReport r;
  r.variable = std::move(variable);
  r.test = UnitRootTest::adf;
  r.deterministic = options.deterministic;
  r.lag_or_bandwidth = lag;
  r.statistic = reg.t_stat;
  r.nobs = reg.fit.nobs;
  r.critical = mackinnon_critical_values(terms, r.nobs);
  return r;
}

UnitRootReport pp(std::span<const double> series, Deterministic deterministic, const KernelSpec& kernel,
                  std::string variable) {
  check_not_degenerate(series);
  if (series.size() < 15) fail(ErrorCode::series_too_short, "PP needs at least 15 observations");
  const DfTerms terms = to_terms(deterministic);
  const auto reg = df_regression(series, terms, 0);
  const auto& fit = reg.fit;
  const int bandwidth = resolve_bandwidth(kernel, fit.nobs);

  const double gamma0 = long_run_variance(fit.residuals, KernelSpec::fixed(0));
  const double lambda2 = long_run_variance(fit.residuals, KernelSpec::fixed(bandwidth));
  if (!(lambda2 > 0.0)) fail(ErrorCode::degenerate_series, "non-positive long-run variance");
  const double s = std::sqrt(fit.sigma2);
  const double se_rho = fit.std_errors(0);
  const double n = static_cast<double>(fit.nobs);
  const double lambda = std::sqrt(lambda2);

  UnitRootReport r;
  r.variable = std::move(variable);
  r.test = UnitRootTest::pp;
  r.deterministic = deterministic;
  r.lag_or_bandwidth = bandwidth;
  r.statistic = std::sqrt(gamma0 / lambda2) * reg.t_stat -
                0.5 * (lambda2 - gamma0) / lambda * (n * se_rho / s);
  r.nobs = fit.nobs;
  r.critical = mackinnon_critical_values(terms, r.nobs);
  return r;
}

double dfgls_quasi_difference(Deterministic deterministic, std::size_t n) noexcept {
  const double cbar = deterministic == Deterministic::constant ? -7.0 : -13.5;
  return 1.0 + cbar / static_cast<double>(n);
}

std::vector<double> gls_detrend(std::span<const double> series, Deterministic deterministic) {
  const auto n = static_cast<Eigen::Index>(series.size());
  if (n < 3) fail(ErrorCode::series_too_short, "GLS detrending needs at least 3 observations");
  const double a = dfgls_quasi_difference(deterministic, series.size());
  const Eigen::Index m = deterministic == Deterministic::constant ? 1 : 2;
  Eigen::MatrixXd z(n, m);
  for (Eigen::Index t = 0; t < n; ++t) {
    z(t, 0) = 1.0;
    if (m == 2) z(t, 1) = static_cast<double>(t + 1);
  }
  Eigen::VectorXd ya(n);
  Eigen::MatrixXd za(n, m);
  ya(0) = series[0];
  za.row(0) = z.row(0);
  for (Eigen::Index t = 1; t < n; ++t) {
    ya(t) = series[static_cast<std::size_t>(t)] - a * series[static_cast<std::size_t>(t - 1)];
    za.row(t) = z.row(t) - a * z.row(t - 1);
  }
  const auto fit = ols(ya, za);
  const Eigen::VectorXd trend = z * fit.coef;
  std::vector<double> out(series.size());
  for (Eigen::Index t = 0; t < n; ++t) out[static_cast<std::size_t>(t)] = series[static_cast<std::size_t>(t)] - trend(t);
  return out;
}

UnitRootReport dfgls(std::span<const double> series, const AdfOptions& options, std::string variable) {
  check_not_degenerate(series);
  const int max_lag = options.max_lag.value_or(default_max_lag(series.size()));
  const int needed = options.fixed_lag ? *options.fixed_lag : max_lag;
  if (series.size() < static_cast<std::size_t>(needed) + 10) {
    fail(ErrorCode::series_too_short,
         fmt::format("DF-GLS needs n >= max_lag + 10 ({} < {})", series.size(), needed + 10));
  }
  const auto detrended = gls_detrend(series, options.deterministic);
  const int lag = options.fixed_lag ? *options.fixed_lag
                                    : select_df_lag(ols_detrend(series, options.deterministic), DfTerms::none,
                                                    max_lag, options.criterion);
  const auto reg = df_regression(detrended, DfTerms::none, lag);

  UnitRootReport r;
  r.variable = std::move(variable);
  r.test = UnitRootTest::dfgls;
  r.deterministic = options.deterministic;
  r.lag_or_bandwidth = lag;
  r.statistic = reg.t_stat;
  r.nobs = reg.fit.nobs;
  r.critical = dfgls_critical_values(options.deterministic, r.nobs);
  return r;
}

std::string_view to_string(IntegrationOrder order) noexcept {
  return order == IntegrationOrder::I0 ? "I(0)" : "I(1)";
}

IntegrationDecision integration_order(const UnitRootReport& level, const UnitRootReport& difference,
                                      Significance alpha_level) {
  if (level.test != difference.test) {
    fail(ErrorCode::invalid_argument, "level and difference reports come from different tests");
  }
  IntegrationDecision d{level.variable, IntegrationOrder::I1, level, difference};
  if (level.rejects(alpha_level)) {
    d.order = IntegrationOrder::I0;
  } else if (difference.rejects(alpha_level)) {
    d.order = IntegrationOrder::I1;
  } else {
    fail(ErrorCode::possible_i2,
         fmt::format("'{}' ({}): neither level ({:.3f}) nor first difference ({:.3f}) rejects a unit root "
                     "at {}; ARDL bounds testing is invalid for I(2) series",
                     level.variable, to_string(level.test), level.statistic, difference.statistic,
                     label(alpha_level)));
  }
  return d;
}

}  // namespace ardlkit

#include "ardlkit/ardl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ardlkit/error.hpp"
#include "ardlkit/parallel.hpp"

namespace ardlkit {
namespace {

using Bounds4 = std::array<CriticalBounds, 4>;

// Table of the reference study for k = 5 (10%, 5%, 2.5%, 1%).
constexpr Bounds4 kReferenceK5{{{1.98, 3.01}, {2.29, 3.24}, {2.60, 3.71}, {2.98, 3.99}}};

// Pesaran, Shin & Smith (2001) Table CI(iii): unrestricted intercept, no trend.
constexpr std::array<Bounds4, 11> kPesaranCase3{{
    {{{6.58, 6.58}, {8.21, 8.21}, {9.80, 9.80}, {11.79, 11.79}}},
    {{{4.04, 4.78}, {4.94, 5.73}, {5.77, 6.68}, {6.84, 7.84}}},
    {{{3.17, 4.14}, {3.79, 4.85}, {4.41, 5.52}, {5.15, 6.36}}},
    {{{2.72, 3.77}, {3.23, 4.35}, {3.69, 4.89}, {4.29, 5.61}}},
    {{{2.45, 3.52}, {2.86, 4.01}, {3.25, 4.49}, {3.74, 5.06}}},
    {{{2.26, 3.35}, {2.62, 3.79}, {2.96, 4.18}, {3.41, 4.68}}},
    {{{2.12, 3.23}, {2.45, 3.61}, {2.75, 3.99}, {3.15, 4.43}}},
    {{{2.03, 3.13}, {2.32, 3.50}, {2.60, 3.84}, {2.96, 4.26}}},
    {{{1.95, 3.06}, {2.22, 3.39}, {2.48, 3.70}, {2.79, 4.10}}},
    {{{1.88, 2.99}, {2.14, 3.30}, {2.37, 3.60}, {2.65, 3.97}}},
    {{{1.83, 2.94}, {2.06, 3.24}, {2.28, 3.50}, {2.54, 3.86}}},
}};

// Every column the conditional ECM can use for orders up to (max_p, max_q),
// plus the positions each candidate order selects from it.
struct DesignLayout {
  Eigen::MatrixXd design;
  Eigen::VectorXd response;
  std::vector<std::string> names;
  std::size_t level_begin = 1;
  std::size_t dy_begin = 0;
  std::vector<std::size_t> dx_begin;
  int max_p = 1;
  int max_q = 0;

  [[nodiscard]] std::vector<std::size_t> columns_for(const ArdlOrder& order, bool with_levels) const {
    std::vector<std::size_t> cols{0};
    if (with_levels) {
      for (std::size_t i = 0; i < dx_begin.size() + 1; ++i) cols.push_back(level_begin + i);
    }
    for (int j = 1; j < order.p; ++j) cols.push_back(dy_begin + static_cast<std::size_t>(j - 1));
    for (std::size_t i = 0; i < order.q.size(); ++i) {
      for (int j = 0; j < order.q[i]; ++j) cols.push_back(dx_begin[i] + static_cast<std::size_t>(j));
    }
    return cols;
  }
};

std::string lag_name(const std::string& name, int lag) {
  return lag == 0 ? name : fmt::format("{}(-{})", name, lag);
}

DesignLayout build_layout(const TimeSeriesFrame& frame, const ModelSpec& spec, int max_p, int max_q,
                          int first) {
  const auto y = frame.column(spec.dependent);
  std::vector<std::span<const double>> xs;
  for (const auto& r : spec.regressors) xs.push_back(frame.column(r));
  const auto n = static_cast<Eigen::Index>(frame.size());
  const Eigen::Index rows = n - first;
  const auto k = static_cast<Eigen::Index>(xs.size());

  DesignLayout L;
  L.max_p = max_p;
  L.max_q = max_q;
  const Eigen::Index cols = 1 + (k + 1) + (max_p - 1) + k * max_q;
  L.design.resize(rows, cols);
  L.response.resize(rows);
  L.names.reserve(static_cast<std::size_t>(cols));
  L.names.emplace_back("C");
  L.names.push_back(lag_name(spec.dependent, 1));
  for (const auto& r : spec.regressors) L.names.push_back(lag_name(r, 1));
  L.dy_begin = L.names.size();
  for (int j = 1; j < max_p; ++j) L.names.push_back(lag_name("D." + spec.dependent, j));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    L.dx_begin.push_back(L.names.size());
    for (int j = 0; j < max_q; ++j) L.names.push_back(lag_name("D." + spec.regressors[i], j));
  }

  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto t = static_cast<std::size_t>(first + r);
    L.response(r) = y[t] - y[t - 1];
    Eigen::Index c = 0;
    L.design(r, c++) = 1.0;
    L.design(r, c++) = y[t - 1];
    for (const auto& x : xs) L.design(r, c++) = x[t - 1];
    for (int j = 1; j < max_p; ++j) {
      const auto s = static_cast<std::size_t>(j);
      L.design(r, c++) = y[t - s] - y[t - s - 1];
    }
    for (const auto& x : xs) {
      for (int j = 0; j < max_q; ++j) {
        const auto s = static_cast<std::size_t>(j);
        L.design(r, c++) = x[t - s] - x[t - s - 1];
      }
    }
  }
  return L;
}

Eigen::MatrixXd take_columns(const Eigen::MatrixXd& M, const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd out(M.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = M.col(static_cast<Eigen::Index>(cols[j]));
  return out;
}

std::vector<std::string> take_names(const std::vector<std::string>& names, const std::vector<std::size_t>& cols) {
  std::vector<std::string> out;
  out.reserve(cols.size());
  for (auto c : cols) out.push_back(names[c]);
  return out;
}

void check_order(const ArdlOrder& order, const ModelSpec& spec) {
  if (order.p < 1) fail(ErrorCode::invalid_argument, "ARDL p must be >= 1");
  if (order.q.size() != spec.regressors.size()) {
    fail(ErrorCode::invalid_argument,
         fmt::format("ARDL order has {} q entries for {} regressors", order.q.size(), spec.regressors.size()));
  }
  for (int q : order.q) {
    if (q < 0) fail(ErrorCode::invalid_argument, "ARDL q must be >= 0");
  }
}

int parameter_count(const ArdlOrder& order) {
  return 1 + order.p + static_cast<int>(order.q.size()) + std::accumulate(order.q.begin(), order.q.end(), 0);
}

}  // namespace

int ArdlOrder::total() const noexcept { return p + std::accumulate(q.begin(), q.end(), 0); }

int ArdlOrder::first_row() const noexcept {
  int f = std::max(1, p);
  for (int v : q) f = std::max(f, v);
  return f;
}

std::string ArdlOrder::to_string() const {
  return fmt::format("ARDL({}{}{})", p, q.empty() ? "" : ", ", fmt::join(q, ", "));
}

namespace detail {
bool prefer(const LagCandidate& a, const LagCandidate& b) noexcept {
  const double scale = std::max({1.0, std::abs(a.criterion), std::abs(b.criterion)});
  const bool both_infinite = std::isinf(a.criterion) && std::isinf(b.criterion) && a.criterion == b.criterion;
  if (!both_infinite && std::abs(a.criterion - b.criterion) > 1e-12 * scale) {
    return a.criterion < b.criterion;
  }
  if (a.order.total() != b.order.total()) return a.order.total() < b.order.total();
  if (a.order.p != b.order.p) return a.order.p < b.order.p;
  return a.order.q < b.order.q;
}
}  // namespace detail

ArdlOrder select_ardl_lags(const TimeSeriesFrame& frame, const ModelSpec& spec, InfoCriterion criterion,
                           int jobs) {
  spec.validate(frame);
  const int first = std::max({1, spec.max_p, spec.max_q});
  if (static_cast<int>(frame.size()) <= first) {
    fail(ErrorCode::no_feasible_spec, fmt::format("{} observations leave no sample for max lag {}",
                                                  frame.size(), first));
  }
  const auto layout = build_layout(frame, spec, spec.max_p, spec.max_q, first);
  const auto nobs = static_cast<int>(layout.response.size());
  const std::size_t k = spec.regressors.size();

  std::vector<ArdlOrder> grid;
  std::size_t combos = 1;
  for (std::size_t i = 0; i < k; ++i) combos *= static_cast<std::size_t>(spec.max_q + 1);
  for (int p = 1; p <= spec.max_p; ++p) {
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<int> q(k, 0);
      std::size_t rest = code;
      for (std::size_t i = k; i-- > 0;) {
        q[i] = static_cast<int>(rest % static_cast<std::size_t>(spec.max_q + 1));
        rest /= static_cast<std::size_t>(spec.max_q + 1);
      }
      grid.push_back({p, std::move(q)});
    }
  }

  std::vector<std::optional<detail::LagCandidate>> scored(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t g) {
    const auto& order = grid[g];
    if (nobs < parameter_count(order) + 5) return;
    try {
      const auto cols = layout.columns_for(order, true);
      const auto fit = ols(layout.response, take_columns(layout.design, cols));
      scored[g] = detail::LagCandidate{order, info_criterion(fit, criterion)};
    } catch (const Error&) {
      // rank-deficient or too small: not a feasible candidate
    }
  });

  std::optional<detail::LagCandidate> best;
  for (const auto& c : scored) {
    if (c && (!best || detail::prefer(*c, *best))) best = c;
  }
  if (!best) fail(ErrorCode::no_feasible_spec, "every ARDL candidate is rank-deficient or sample-exhausted");
  return best->order;
}

ArdlFit fit_conditional_ecm(const TimeSeriesFrame& frame, const ModelSpec& spec, const ArdlOrder& order) {
  spec.validate(frame);
  check_order(order, spec);
  const int first = order.first_row();
  const int nobs = static_cast<int>(frame.size()) - first;
  if (nobs < parameter_count(order) + 5) {
    fail(ErrorCode::too_few_observations,
         fmt::format("{} needs {} observations after lagging, have {}", order.to_string(),
                     parameter_count(order) + 5, nobs));
  }
  const int max_q = order.q.empty() ? 0 : *std::max_element(order.q.begin(), order.q.end());
  const auto layout = build_layout(frame, spec, order.p, max_q, first);
  const auto cols = layout.columns_for(order, true);

  ArdlFit f;
  f.order = order;
  f.dependent = spec.dependent;
  f.regressors = spec.regressors;
  f.first_row = first;
  f.design = take_columns(layout.design, cols);
  f.response = layout.response;
  f.column_names = take_names(layout.names, cols);
  f.regression = ols(f.response, f.design, f.column_names);
  f.intercept_index = 0;
  for (std::size_t i = 0; i <= spec.regressors.size(); ++i) f.level_indices.push_back(1 + i);
  for (std::size_t c = spec.regressors.size() + 2; c < cols.size(); ++c) f.diff_indices.push_back(c);
  return f;
}

std::string_view to_string(BoundsDecision d) noexcept {
  switch (d) {
    case BoundsDecision::cointegrated: return "cointegrated";
    case BoundsDecision::inconclusive: return "inconclusive";
    case BoundsDecision::not_cointegrated: return "not_cointegrated";
  }
  return "inconclusive";
}

std::string_view to_string(BoundsTable t) noexcept {
  return t == BoundsTable::reference_k5 ? "reference_k5" : "pesaran_case3";
}

std::array<CriticalBounds, 4> bounds_critical_values(BoundsTable table, int k, BoundsTable* used) {
  if (table == BoundsTable::reference_k5 && k == 5) {
    if (used) *used = BoundsTable::reference_k5;
    return kReferenceK5;
  }
  if (k < 0 || k >= static_cast<int>(kPesaranCase3.size())) {
    fail(ErrorCode::invalid_argument, fmt::format("no bounds table for k = {} (supported 0..10)", k));
  }
  if (used) *used = BoundsTable::pesaran_case3;
  return kPesaranCase3[static_cast<std::size_t>(k)];
}

BoundsDecision decide_bounds(double f_stat, const CriticalBounds& bounds) noexcept {
  if (f_stat > bounds.i1) return BoundsDecision::cointegrated;
  if (f_stat < bounds.i0) return BoundsDecision::not_cointegrated;
  return BoundsDecision::inconclusive;
}

BoundsDecision BoundsResult::decision_at(Significance level) const noexcept {
  for (std::size_t i = 0; i < kBoundsLevels.size(); ++i) {
    if (kBoundsLevels[i] == level) return decision[i];
  }
  return BoundsDecision::inconclusive;
}

BoundsResult bounds_result(double f_stat, int k, BoundsTable table) {
  BoundsResult r;
  r.f_stat = f_stat;
  r.k = k;
  r.bounds = bounds_critical_values(table, k, &r.table);
  for (std::size_t i = 0; i < r.bounds.size(); ++i) r.decision[i] = decide_bounds(f_stat, r.bounds[i]);
  return r;
}

BoundsResult bounds_test(const ArdlFit& fit, BoundsTable table) {
  if (fit.level_indices.empty()) fail(ErrorCode::invalid_argument, "fit has no level terms");
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < fit.column_names.size(); ++c) {
    if (std::find(fit.level_indices.begin(), fit.level_indices.end(), c) == fit.level_indices.end()) {
      keep.push_back(c);
    }
  }
  const auto restricted = ols(fit.response, take_columns(fit.design, keep));
  const auto wald = wald_f_zero(fit.regression, fit.level_indices, restricted.rss);
  auto r = bounds_result(wald.f_stat, static_cast<int>(fit.regressors.size()), table);
  r.p_value = wald.p_value;
  return r;
}

std::vector<Estimate> long_run_coefficients(const ArdlFit& fit) {
  const auto& b = fit.regression.coef;
  const double tau1 = b(1);
  if (std::abs(tau1) < 1e-8) {
    fail(ErrorCode::near_singular_adjustment,
         fmt::format("lagged dependent level coefficient {} is too close to zero", tau1));
  }
  const Eigen::MatrixXd cov = fit.regression.covariance();
  std::vector<Estimate> out;
  for (std::size_t i = 0; i < fit.regressors.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(2 + i);
    const double tau = b(idx);
    const double lr = -tau / tau1;
    // gradient of -tau/tau1 with respect to (tau1, tau)
    const double g1 = tau / (tau1 * tau1);
    const double g2 = -1.0 / tau1;
    const double var = g1 * g1 * cov(1, 1) + 2.0 * g1 * g2 * cov(1, idx) + g2 * g2 * cov(idx, idx);
    out.push_back({fit.regressors[i], lr, std::sqrt(std::max(0.0, var))});
  }
  return out;
}

EctSeries error_correction_term(const TimeSeriesFrame& frame, const ModelSpec& spec,
                                const std::vector<Estimate>& long_run) {
  if (long_run.size() != spec.regressors.size()) {
    fail(ErrorCode::invalid_argument, "long-run coefficients do not match the regressors");
  }
  const auto y = frame.column(spec.dependent);
  std::vector<double> gap(y.begin(), y.end());
  for (std::size_t i = 0; i < long_run.size(); ++i) {
    const auto x = frame.column(spec.regressors[i]);
    for (std::size_t t = 0; t < gap.size(); ++t) gap[t] -= long_run[i].coef * x[t];
  }
  double intercept = 0.0;
  for (double g : gap) intercept += g;
  intercept /= static_cast<double>(gap.size());
  for (double& g : gap) g -= intercept;
  return {std::move(gap), intercept};
}

EcmResult fit_ecm(const TimeSeriesFrame& frame, const ModelSpec& spec, const ArdlOrder& order,
                  const std::vector<Estimate>& long_run) {
  spec.validate(frame);
  check_order(order, spec);
  const int first = order.first_row();
  const int max_q = order.q.empty() ? 0 : *std::max_element(order.q.begin(), order.q.end());
  const int params = 1 + (order.p - 1) + std::accumulate(order.q.begin(), order.q.end(), 0) + 1;
  const int nobs = static_cast<int>(frame.size()) - first;
  if (nobs < params + 5) {
    fail(ErrorCode::too_few_observations,
         fmt::format("ECM needs {} observations after lagging, have {}", params + 5, nobs));
  }
  const auto layout = build_layout(frame, spec, order.p, max_q, first);
  const auto cols = layout.columns_for(order, false);
  const auto ect = error_correction_term(frame, spec, long_run);

  Eigen::MatrixXd X(layout.response.size(), static_cast<Eigen::Index>(cols.size()) + 1);
  X.leftCols(static_cast<Eigen::Index>(cols.size())) = take_columns(layout.design, cols);
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    X(r, X.cols() - 1) = ect.values[static_cast<std::size_t>(first + r - 1)];
  }
  auto names = take_names(layout.names, cols);
  names.emplace_back("ECT(-1)");
  const auto fit = ols(layout.response, X, names);

  EcmResult out;
  out.long_run = long_run;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto i = static_cast<Eigen::Index>(c);
    out.short_run.push_back({names[c], fit.coef(i), fit.std_errors(i)});
  }
  const auto last = X.cols() - 1;
  out.ect = {"ECT(-1)", fit.coef(last), fit.std_errors(last)};
  out.r2 = fit.r2;
  out.ect_intercept = ect.intercept;
  out.nobs = fit.nobs;
  out.convergence_warning = !(out.ect.coef > -2.0 && out.ect.coef < 0.0);
  return out;
}

}  // namespace ardlkit

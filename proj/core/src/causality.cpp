#include "ardlkit/causality.hpp"

#include <limits>

#include <fmt/format.h>

#include "ardlkit/error.hpp"
#include "ardlkit/parallel.hpp"

namespace ardlkit {
namespace {

// Rows t = first..n-1: [1, y_{t-1..t-lag}, x_{t-1..t-lag}].
void build(std::span<const double> x, std::span<const double> y, int lag, Eigen::Index first,
           Eigen::VectorXd& response, Eigen::MatrixXd& design) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const Eigen::Index rows = n - first;
  response.resize(rows);
  design.resize(rows, 1 + 2 * lag);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto t = static_cast<std::size_t>(first + r);
    response(r) = y[t];
    design(r, 0) = 1.0;
    for (int j = 1; j <= lag; ++j) {
      design(r, j) = y[t - static_cast<std::size_t>(j)];
      design(r, lag + j) = x[t - static_cast<std::size_t>(j)];
    }
  }
}

void check_inputs(std::span<const double> x, std::span<const double> y, int lag) {
  if (lag < 1) fail(ErrorCode::invalid_argument, "Granger lag must be >= 1");
  if (x.size() != y.size()) fail(ErrorCode::invalid_argument, "Granger series differ in length");
  if (y.size() <= static_cast<std::size_t>(2 * lag + 2)) {
    fail(ErrorCode::series_too_short,
         fmt::format("{} observations cannot support Granger lag {}", y.size(), lag));
  }
}

}  // namespace

CausalityReport granger_pair(std::span<const double> x, std::span<const double> y, int lag,
                             std::string cause, std::string effect) {
  check_inputs(x, y, lag);
  Eigen::VectorXd response;
  Eigen::MatrixXd design;
  build(x, y, lag, lag, response, design);
  const auto unrestricted = ols(response, design);
  const auto restricted = ols(response, design.leftCols(1 + lag));
  std::vector<std::size_t> block;
  for (int j = 0; j < lag; ++j) block.push_back(static_cast<std::size_t>(1 + lag + j));
  const auto w = wald_f_zero(unrestricted, block, restricted.rss);

  CausalityReport r;
  r.cause = std::move(cause);
  r.effect = std::move(effect);
  r.lag = lag;
  r.nobs = unrestricted.nobs;
  r.f_stat = w.f_stat;
  r.p_value = w.p_value;
  return r;
}

int select_granger_lag(std::span<const double> x, std::span<const double> y, int max_lag,
                       InfoCriterion criterion) {
  check_inputs(x, y, max_lag);
  Eigen::VectorXd response;
  Eigen::MatrixXd design;
  build(x, y, max_lag, max_lag, response, design);
  int best = 0;
  double best_ic = std::numeric_limits<double>::infinity();
  for (int lag = 1; lag <= max_lag; ++lag) {
    Eigen::MatrixXd X(design.rows(), 1 + 2 * lag);
    X.leftCols(1 + lag) = design.leftCols(1 + lag);
    X.rightCols(lag) = design.middleCols(1 + max_lag, lag);
    try {
      const double ic = info_criterion(ols(response, X), criterion);
      if (best == 0 || ic < best_ic) {
        best = lag;
        best_ic = ic;
      }
    } catch (const RankDeficientError&) {
    }
  }
  if (best == 0) fail(ErrorCode::rank_deficient, "no Granger lag yields a full-rank regression");
  return best;
}

std::vector<CausalityReport> causality_matrix(const TimeSeriesFrame& frame,
                                              std::span<const std::string> variables,
                                              const std::string& dependent, std::optional<int> lag, int jobs) {
  const auto dep = frame.column(dependent);
  std::vector<CausalityReport> rows(2 * variables.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const auto& v = variables[i / 2];
    const bool to_dependent = i % 2 == 0;
    CausalityReport& out = rows[i];
    out.cause = to_dependent ? v : dependent;
    out.effect = to_dependent ? dependent : v;
    try {
      if (v == dependent) fail(ErrorCode::invalid_argument, "variable equals the dependent variable");
      const auto other = frame.column(v);
      const auto x = to_dependent ? other : dep;
      const auto y = to_dependent ? dep : other;
      const int p = lag ? *lag : select_granger_lag(x, y, 4);
      out = granger_pair(x, y, p, out.cause, out.effect);
    } catch (const Error& e) {
      out.error = e.what();
    }
  });
  return rows;
}

std::string_view to_string(CausalDirection d) noexcept {
  switch (d) {
    case CausalDirection::none: return "none";
    case CausalDirection::to_dependent: return "unidirectional (to dependent)";
    case CausalDirection::from_dependent: return "unidirectional (from dependent)";
    case CausalDirection::bidirectional: return "bidirectional";
  }
  return "none";
}

CausalDirection classify(const CausalityReport& to_dependent, const CausalityReport& from_dependent,
                         Significance level) noexcept {
  const bool a = to_dependent.rejects(level);
  const bool b = from_dependent.rejects(level);
  if (a && b) return CausalDirection::bidirectional;
  if (a) return CausalDirection::to_dependent;
  if (b) return CausalDirection::from_dependent;
  return CausalDirection::none;
}

}  // namespace ardlkit

#include "ardlkit/regression.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ardlkit/distributions.hpp"
#include "ardlkit/error.hpp"

namespace ardlkit {
namespace {

RegressionResult fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     std::span<const std::string> names) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (y.size() != n) {
    fail(ErrorCode::invalid_argument,
         fmt::format("response has {} rows, design has {}", y.size(), n));
  }
  if (k < 1) fail(ErrorCode::invalid_argument, "design has no columns");
  if (n <= k) {
    fail(ErrorCode::too_few_observations, fmt::format("{} observations for {} coefficients", n, k));
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
  const auto& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankTolerance * largest) ++rank;
  }
  if (largest <= 0.0) rank = 0;
  if (rank < k) {
    std::vector<std::size_t> dependent;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = rank; i < k; ++i) dependent.push_back(static_cast<std::size_t>(perm(i)));
    std::vector<std::string> labels;
    for (auto c : dependent) {
      labels.push_back(c < names.size() ? names[c] : fmt::format("#{}", c));
    }
    throw RankDeficientError(
        fmt::format("RankDeficient: design rank {} < {} columns; dependent: {}", rank, k,
                    fmt::join(labels, ", ")),
        std::move(dependent));
  }

  RegressionResult r;
  r.nobs = n;
  r.df_resid = n - k;
  r.coef = qr.solve(y);

  const Eigen::MatrixXd r_inv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const auto& P = qr.colsPermutation();
  r.xtx_inverse = P * (r_inv * r_inv.transpose()) * P.transpose();

  r.residuals = y - X * r.coef;
  r.rss = r.residuals.squaredNorm();
  r.sigma2 = r.rss / static_cast<double>(r.df_resid);
  r.std_errors = (r.sigma2 * r.xtx_inverse.diagonal().array()).sqrt().matrix();
  r.tstats.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (r.std_errors(i) > 0.0) {
      r.tstats(i) = r.coef(i) / r.std_errors(i);
    } else {
      r.tstats(i) = r.coef(i) == 0.0 ? 0.0
                                     : std::copysign(std::numeric_limits<double>::infinity(), r.coef(i));
    }
  }

  r.tss = (y.array() - y.mean()).square().sum();
  if (r.tss > 0.0) {
    r.r2 = 1.0 - r.rss / r.tss;
  } else {
    r.r2 = 0.0;
    r.degenerate_r2 = true;
  }
  const double nn = static_cast<double>(n);
  r.loglik = -0.5 * nn * (std::log(2.0 * std::numbers::pi) + std::log(r.rss / nn) + 1.0);
  return r;
}

}  // namespace

RegressionResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  return fit(y, X, {});
}

RegressionResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     std::span<const std::string> column_names) {
  return fit(y, X, column_names);
}

WaldResult wald_f_zero(const RegressionResult& fit, std::span<const std::size_t> subset,
                       double restricted_rss) {
  if (subset.empty()) fail(ErrorCode::invalid_argument, "Wald subset is empty");
  for (auto i : subset) {
    if (static_cast<Eigen::Index>(i) >= fit.k()) {
      fail(ErrorCode::invalid_argument, fmt::format("Wald index {} out of range", i));
    }
  }
  WaldResult w;
  w.numerator_df = static_cast<int>(subset.size());
  w.denominator_df = fit.df_resid;
  const double diff = restricted_rss - fit.rss;
  if (diff <= 0.0) {
    w.negative_numerator = diff < -1e-10 * std::max(1.0, fit.rss);
    w.f_stat = 0.0;
    w.p_value = 1.0;
    return w;
  }
  if (fit.rss <= 0.0) {
    w.f_stat = std::numeric_limits<double>::infinity();
    w.p_value = 0.0;
    return w;
  }
  w.f_stat = (diff / w.numerator_df) / (fit.rss / static_cast<double>(w.denominator_df));
  w.p_value = tail_probability(Distribution::fisher_f, w.f_stat,
                               {static_cast<double>(w.numerator_df),
                                static_cast<double>(w.denominator_df)});
  return w;
}

double info_criterion(double rss, Eigen::Index n, Eigen::Index k, InfoCriterion kind) {
  if (rss <= 0.0) return -std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double fit_term = nn * std::log(rss / nn);
  switch (kind) {
    case InfoCriterion::aic: return fit_term + 2.0 * kk;
    case InfoCriterion::sic: return fit_term + kk * std::log(nn);
    case InfoCriterion::hq: return fit_term + 2.0 * kk * std::log(std::log(nn));
  }
  return fit_term;
}

double info_criterion(const RegressionResult& fit, InfoCriterion kind) {
  return info_criterion(fit.rss, fit.nobs, fit.k(), kind);
}

std::string_view to_string(InfoCriterion kind) noexcept {
  switch (kind) {
    case InfoCriterion::aic: return "aic";
    case InfoCriterion::sic: return "sic";
    case InfoCriterion::hq: return "hq";
  }
  return "aic";
}

InfoCriterion info_criterion_from_string(std::string_view name) {
  if (name == "aic") return InfoCriterion::aic;
  if (name == "sic" || name == "bic") return InfoCriterion::sic;
  if (name == "hq") return InfoCriterion::hq;
  fail(ErrorCode::invalid_argument, fmt::format("unknown information criterion '{}'", name));
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd out(X.rows(), X.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(X.cols()) = X;
  return out;
}

}  // namespace ardlkit

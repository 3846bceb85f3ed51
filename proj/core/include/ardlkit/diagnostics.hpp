#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ardlkit/frame.hpp"
#include "ardlkit/regression.hpp"

namespace ardlkit {

struct TestStatistic {
  double statistic = 0.0;
  double p_value = 1.0;
  friend bool operator==(const TestStatistic&, const TestStatistic&) = default;
};

/// JB = n/6 (S^2 + (K-3)^2/4) with biased moment skewness and kurtosis, chi2(2).
TestStatistic jarque_bera(std::span<const double> residuals);

/// Breusch-Godfrey LM: n R^2 of residuals on the design plus `order` residual
/// lags (pre-sample lags zero), chi2(order).
TestStatistic breusch_godfrey(const RegressionResult& fit, const Eigen::MatrixXd& design, int order);

/// Breusch-Pagan-Godfrey: n R^2 of squared residuals on the design, chi2(k-1).
TestStatistic breusch_pagan_godfrey(const RegressionResult& fit, const Eigen::MatrixXd& design);

enum class Verdict { pass, fail };
std::string_view to_string(Verdict v) noexcept;

/// Nulls are the desirable states, so a test passes when p > level.
inline Verdict verdict(double p_value, Significance level) noexcept {
  return p_value > alpha(level) ? Verdict::pass : Verdict::fail;
}

struct DiagnosticsReport {
  TestStatistic jb;
  TestStatistic lm;
  int lm_order = 2;
  TestStatistic bpg;
  Significance level = Significance::p05;

  [[nodiscard]] Verdict jb_verdict() const noexcept { return verdict(jb.p_value, level); }
  [[nodiscard]] Verdict lm_verdict() const noexcept { return verdict(lm.p_value, level); }
  [[nodiscard]] Verdict bpg_verdict() const noexcept { return verdict(bpg.p_value, level); }
  [[nodiscard]] bool all_pass() const noexcept {
    return jb_verdict() == Verdict::pass && lm_verdict() == Verdict::pass && bpg_verdict() == Verdict::pass;
  }
  friend bool operator==(const DiagnosticsReport&, const DiagnosticsReport&) = default;
};

DiagnosticsReport diagnose(const RegressionResult& fit, const Eigen::MatrixXd& design, int lm_order = 2,
                           Significance level = Significance::p05);

/// w_t = (y_t - x_t' b_{t-1}) / sqrt(1 + x_t' (X_{t-1}'X_{t-1})^-1 x_t), t = k+1..T.
std::vector<double> recursive_residuals(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

enum class StabilityStatistic { cusum, cusum_sq };
std::string_view to_string(StabilityStatistic s) noexcept;

struct StabilityPath {
  StabilityStatistic statistic = StabilityStatistic::cusum;
  std::vector<int> t_index;  // 1-based observation numbers k+1..T
  std::vector<double> values;
  std::vector<double> lower;
  std::vector<double> upper;
  bool stable = true;
  friend bool operator==(const StabilityPath&, const StabilityPath&) = default;
};

/// Brown-Durbin-Evans boundary constant a (0.850, 0.948, 1.143 at 10%, 5%, 1%).
double cusum_boundary_constant(Significance level) noexcept;

/// Half-width c0 of the CUSUM-of-squares band for m = T - k recursive residuals.
double cusum_sq_critical_value(int m, Significance level) noexcept;

StabilityPath cusum(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, Significance level = Significance::p05);
StabilityPath cusum_sq(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                       Significance level = Significance::p05);

/// CSV with header `t,value,lower,upper`.
std::string stability_csv(const StabilityPath& path);

}  // namespace ardlkit

#include "ardlkit/diagnostics.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "ardlkit/distributions.hpp"
#include "ardlkit/error.hpp"

namespace ardlkit {
namespace {

// Simulated quantiles of max_t |S_t - t/m| under i.i.d. normal recursive
// residuals (400k replications per m). Columns: 10%, 5%, 2.5%, 1%.
struct SqRow {
  int m;
  std::array<double, 4> c;
};
constexpr std::array<SqRow, 46> kCusumSq{{
    {3, {0.5698, 0.6175, 0.6421, 0.6567}},   {4, {0.5214, 0.6036, 0.6566, 0.6992}},
    {5, {0.5153, 0.5697, 0.6229, 0.6858}},   {6, {0.4875, 0.5509, 0.6014, 0.6529}},
    {7, {0.4722, 0.5284, 0.5792, 0.6362}},   {8, {0.4526, 0.5071, 0.5565, 0.6123}},
    {9, {0.4366, 0.4908, 0.5372, 0.5916}},   {10, {0.4226, 0.4735, 0.5191, 0.5714}},
    {11, {0.4089, 0.4584, 0.5022, 0.5532}},  {12, {0.3966, 0.4451, 0.4881, 0.5387}},
    {13, {0.3858, 0.4331, 0.4747, 0.5244}},  {14, {0.3748, 0.4206, 0.4613, 0.5095}},
    {15, {0.3666, 0.4112, 0.4502, 0.4972}},  {16, {0.3564, 0.3997, 0.4379, 0.4837}},
    {17, {0.3486, 0.3911, 0.4293, 0.4742}},  {18, {0.3408, 0.3824, 0.4200, 0.4634}},
    {19, {0.3337, 0.3738, 0.4100, 0.4532}},  {20, {0.3273, 0.3670, 0.4026, 0.4445}},
    {21, {0.3214, 0.3602, 0.3949, 0.4357}},  {22, {0.3146, 0.3531, 0.3874, 0.4273}},
    {23, {0.3098, 0.3467, 0.3806, 0.4213}},  {24, {0.3040, 0.3403, 0.3735, 0.4130}},
    {25, {0.2984, 0.3347, 0.3668, 0.4060}},  {26, {0.2942, 0.3295, 0.3610, 0.3992}},
    {27, {0.2894, 0.3235, 0.3543, 0.3912}},  {28, {0.2853, 0.3193, 0.3496, 0.3867}},
    {29, {0.2807, 0.3142, 0.3442, 0.3808}},  {30, {0.2771, 0.3102, 0.3398, 0.3754}},
    {35, {0.2591, 0.2897, 0.3173, 0.3508}},  {40, {0.2447, 0.2739, 0.3002, 0.3315}},
    {45, {0.2326, 0.2599, 0.2850, 0.3146}},  {50, {0.2218, 0.2481, 0.2719, 0.3002}},
    {60, {0.2048, 0.2290, 0.2508, 0.2761}},  {70, {0.1907, 0.2130, 0.2331, 0.2571}},
    {80, {0.1792, 0.2004, 0.2193, 0.2420}},  {90, {0.1698, 0.1896, 0.2080, 0.2297}},
    {100, {0.1620, 0.1808, 0.1977, 0.2182}}, {120, {0.1487, 0.1659, 0.1815, 0.2003}},
    {150, {0.1339, 0.1492, 0.1634, 0.1800}}, {200, {0.1168, 0.1301, 0.1421, 0.1568}},
    {250, {0.1051, 0.1171, 0.1279, 0.1411}}, {300, {0.0964, 0.1073, 0.1172, 0.1290}},
    {400, {0.0837, 0.0932, 0.1018, 0.1124}}, {500, {0.0752, 0.0836, 0.0914, 0.1007}},
    {750, {0.0618, 0.0687, 0.0751, 0.0827}}, {1000, {0.0537, 0.0597, 0.0652, 0.0717}},
}};

std::size_t level_column(Significance level) {
  switch (level) {
    case Significance::p10: return 0;
    case Significance::p05: return 1;
    case Significance::p025: return 2;
    case Significance::p01: return 3;
  }
  return 1;
}

double rms(const Eigen::VectorXd& y) { return y.size() ? std::sqrt(y.squaredNorm() / static_cast<double>(y.size())) : 0.0; }

}  // namespace

TestStatistic jarque_bera(std::span<const double> residuals) {
  const auto n = residuals.size();
  if (n < 4) fail(ErrorCode::series_too_short, "Jarque-Bera needs at least 4 residuals");
  double mean = 0.0;
  for (double e : residuals) mean += e;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double e : residuals) {
    const double d = e - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  if (!(m2 > 1e-24 * mean * mean)) fail(ErrorCode::degenerate_residuals, "residuals have zero variance");
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  const double jb = static_cast<double>(n) / 6.0 * (skew * skew + (kurt - 3.0) * (kurt - 3.0) / 4.0);
  return {jb, tail_probability(Distribution::chi_squared, jb, {2.0})};
}

TestStatistic breusch_godfrey(const RegressionResult& fit, const Eigen::MatrixXd& design, int order) {
  if (order < 1) fail(ErrorCode::invalid_argument, "Breusch-Godfrey order must be >= 1");
  const Eigen::Index n = design.rows();
  const Eigen::Index k = design.cols();
  if (fit.residuals.size() != n) fail(ErrorCode::invalid_argument, "residuals do not match the design");
  if (n <= k + order) {
    fail(ErrorCode::too_few_observations, fmt::format("{} observations for BG order {} with {} regressors", n, order, k));
  }
  const Eigen::VectorXd& e = fit.residuals;
  // exact fits leave rounding-level residuals whose lags are collinear noise
  if (fit.rss <= 1e-20 * fit.tss || e.squaredNorm() == 0.0) return {0.0, 1.0};
  Eigen::MatrixXd aux(n, k + order);
  aux.leftCols(k) = design;
  for (int j = 1; j <= order; ++j) {
    for (Eigen::Index t = 0; t < n; ++t) aux(t, k + j - 1) = t >= j ? e(t - j) : 0.0;
  }
  const auto a = ols(e, aux);
  const double stat = static_cast<double>(n) * a.r2;
  return {stat, tail_probability(Distribution::chi_squared, stat, {static_cast<double>(order)})};
}

TestStatistic breusch_pagan_godfrey(const RegressionResult& fit, const Eigen::MatrixXd& design) {
  const Eigen::Index n = design.rows();
  const Eigen::Index k = design.cols();
  if (fit.residuals.size() != n) fail(ErrorCode::invalid_argument, "residuals do not match the design");
  if (k < 2) fail(ErrorCode::invalid_argument, "Breusch-Pagan-Godfrey needs a regressor besides the intercept");
  if (n <= k) fail(ErrorCode::too_few_observations, "Breusch-Pagan-Godfrey needs n > k");
  const Eigen::VectorXd e2 = fit.residuals.array().square();
  const auto a = ols(e2, design);
  const double stat = static_cast<double>(n) * a.r2;
  return {stat, tail_probability(Distribution::chi_squared, stat, {static_cast<double>(k - 1)})};
}

std::string_view to_string(Verdict v) noexcept { return v == Verdict::pass ? "pass" : "fail"; }

DiagnosticsReport diagnose(const RegressionResult& fit, const Eigen::MatrixXd& design, int lm_order,
                           Significance level) {
  DiagnosticsReport r;
  r.jb = jarque_bera({fit.residuals.data(), static_cast<std::size_t>(fit.residuals.size())});
  r.lm = breusch_godfrey(fit, design, lm_order);
  r.lm_order = lm_order;
  r.bpg = breusch_pagan_godfrey(fit, design);
  r.level = level;
  return r;
}

std::vector<double> recursive_residuals(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  const Eigen::Index T = X.rows();
  const Eigen::Index k = X.cols();
  if (y.size() != T) fail(ErrorCode::invalid_argument, "response and design differ in length");
  if (T <= k) fail(ErrorCode::too_few_observations, "recursive residuals need T > k");

  const Eigen::MatrixXd X0 = X.topRows(k);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(X0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(k - 1) <= kRankTolerance * sv(0)) {
    throw RankDeficientError("RankDeficient: leading k x k block of the design is singular", {});
  }
  Eigen::MatrixXd P = (X0.transpose() * X0).inverse();
  Eigen::VectorXd b = svd.solve(y.head(k));

  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(T - k));
  for (Eigen::Index t = k; t < T; ++t) {
    const Eigen::VectorXd x = X.row(t).transpose();
    const Eigen::VectorXd Px = P * x;
    const double f = 1.0 + x.dot(Px);
    const double err = y(t) - x.dot(b);
    w.push_back(err / std::sqrt(f));
    const Eigen::VectorXd gain = Px / f;
    b += gain * err;
    P -= gain * Px.transpose();
  }
  return w;
}

std::string_view to_string(StabilityStatistic s) noexcept {
  return s == StabilityStatistic::cusum ? "CUSUM" : "CUSUM-SQ";
}

double cusum_boundary_constant(Significance level) noexcept {
  switch (level) {
    case Significance::p01: return 1.143;
    case Significance::p025: return 1.037;  // root of the BDE crossing formula at 2.5%
    case Significance::p05: return 0.948;
    case Significance::p10: return 0.850;
  }
  return 0.948;
}

double cusum_sq_critical_value(int m, Significance level) noexcept {
  const std::size_t col = level_column(level);
  if (m <= kCusumSq.front().m) return kCusumSq.front().c[col];
  if (m >= kCusumSq.back().m) {
    return kCusumSq.back().c[col] * std::sqrt(static_cast<double>(kCusumSq.back().m) / m);
  }
  for (std::size_t i = 1; i < kCusumSq.size(); ++i) {
    if (m <= kCusumSq[i].m) {
      const auto& lo = kCusumSq[i - 1];
      const auto& hi = kCusumSq[i];
      const double w = static_cast<double>(m - lo.m) / static_cast<double>(hi.m - lo.m);
      return lo.c[col] + w * (hi.c[col] - lo.c[col]);
    }
  }
  return kCusumSq.back().c[col];
}

StabilityPath cusum(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, Significance level) {
  const auto w = recursive_residuals(y, X);
  const auto m = static_cast<double>(w.size());
  if (w.size() < 2) fail(ErrorCode::too_few_observations, "CUSUM needs at least two recursive residuals");
  double mean = 0.0;
  for (double v : w) mean += v;
  mean /= m;
  double ss = 0.0;
  for (double v : w) ss += (v - mean) * (v - mean);
  const double sigma = std::sqrt(ss / (m - 1.0));
  const bool flat = sigma <= 1e-10 * rms(y);

  const double a = cusum_boundary_constant(level);
  const auto k = static_cast<int>(X.cols());
  StabilityPath p;
  p.statistic = StabilityStatistic::cusum;
  double running = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    running += w[i];
    const double r = static_cast<double>(i + 1);
    const double bound = a * std::sqrt(m) + 2.0 * a * r / std::sqrt(m);
    const double value = flat ? 0.0 : running / sigma;
    p.t_index.push_back(k + static_cast<int>(i) + 1);
    p.values.push_back(value);
    p.lower.push_back(-bound);
    p.upper.push_back(bound);
    if (value < -bound || value > bound) p.stable = false;
  }
  return p;
}

StabilityPath cusum_sq(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, Significance level) {
  const auto w = recursive_residuals(y, X);
  std::vector<double> cumulative(w.size());
  double running = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    running += w[i] * w[i];
    cumulative[i] = running;
  }
  const double total = running;
  const double floor = 1e-10 * rms(y);
  if (total == 0.0 || total <= floor * floor * static_cast<double>(w.size())) {
    fail(ErrorCode::all_zero_residuals, "recursive residuals are all zero");
  }
  const auto m = static_cast<int>(w.size());
  const double c0 = cusum_sq_critical_value(m, level);
  const auto k = static_cast<int>(X.cols());
  StabilityPath p;
  p.statistic = StabilityStatistic::cusum_sq;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double expected = static_cast<double>(i + 1) / static_cast<double>(m);
    const double value = cumulative[i] / total;
    p.t_index.push_back(k + static_cast<int>(i) + 1);
    p.values.push_back(value);
    p.lower.push_back(expected - c0);
    p.upper.push_back(expected + c0);
    if (value < expected - c0 || value > expected + c0) p.stable = false;
  }
  return p;
}

std::string stability_csv(const StabilityPath& path) {
  std::string out = "t,value,lower,upper\n";
  for (std::size_t i = 0; i < path.values.size(); ++i) {
    out += fmt::format("{},{},{},{}\n", path.t_index[i], path.values[i], path.lower[i], path.upper[i]);
  }
  return out;
}

}  // namespace ardlkit

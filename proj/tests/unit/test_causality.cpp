#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ardlkit/causality.hpp"
#include "ardlkit/error.hpp"
#include "ardlkit/pipeline.hpp"
#include "ardlkit/render.hpp"
#include "ardlkit/synthetic.hpp"
#include "support.hpp"

using namespace ardlkit;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Simple {
  double rss;
  std::vector<double> resid;
};

// Closed-form regression of v on an intercept and w.
Simple simple_regression(const std::vector<double>& v, const std::vector<double>& w) {
  const double n = static_cast<double>(v.size());
  double mv = 0.0, mw = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    mv += v[i] / n;
    mw += w[i] / n;
  }
  double sww = 0.0, swv = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sww += (w[i] - mw) * (w[i] - mw);
    swv += (w[i] - mw) * (v[i] - mv);
  }
  const double b = swv / sww;
  Simple s{0.0, std::vector<double>(v.size())};
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.resid[i] = v[i] - mv - b * (w[i] - mw);
    s.rss += s.resid[i] * s.resid[i];
  }
  return s;
}

// Lag-1 Granger F through two closed-form simple regressions and a
// Frisch-Waugh step for the added x_{t-1}.
double granger_f_lag1(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> yt, ylag, xlag;
  for (std::size_t t = 1; t < y.size(); ++t) {
    yt.push_back(y[t]);
    ylag.push_back(y[t - 1]);
    xlag.push_back(x[t - 1]);
  }
  const auto restricted = simple_regression(yt, ylag);
  const auto xr = simple_regression(xlag, ylag);
  double num = 0.0;
  for (std::size_t i = 0; i < yt.size(); ++i) num += restricted.resid[i] * xr.resid[i];
  const double rss_u = restricted.rss - num * num / xr.rss;
  const double df = static_cast<double>(yt.size()) - 3.0;
  return (restricted.rss - rss_u) / (rss_u / df);
}

// General lag through long-double normal equations.
double granger_f(const std::vector<double>& x, const std::vector<double>& y, int lag) {
  const auto rows = static_cast<Eigen::Index>(y.size()) - lag;
  Eigen::VectorXd v(rows);
  Eigen::MatrixXd U(rows, 1 + 2 * lag);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto t = static_cast<std::size_t>(r + lag);
    v(r) = y[t];
    U(r, 0) = 1.0;
    for (int j = 1; j <= lag; ++j) {
      U(r, j) = y[t - static_cast<std::size_t>(j)];
      U(r, lag + j) = x[t - static_cast<std::size_t>(j)];
    }
  }
  const double rss_u = test_support::rss_normal_equations(v, U);
  const double rss_r = test_support::rss_normal_equations(v, U.leftCols(1 + lag));
  const double df = static_cast<double>(rows - 1 - 2 * lag);
  return ((rss_r - rss_u) / lag) / (rss_u / df);
}

std::vector<double> ar1(Xoshiro256& rng, int T, double rho) {
  std::vector<double> out(static_cast<std::size_t>(T));
  double s = 0.0;
  for (double& v : out) {
    s = rho * s + rng.normal();
    v = s;
  }
  return out;
}

// y_t = 0.8 x_{t-1} + eta_t, x AR(1) with rho = 0.5.
std::pair<std::vector<double>, std::vector<double>> driven(std::uint64_t seed, int T) {
  Xoshiro256 rng(seed);
  const auto x = ar1(rng, T, 0.5);
  std::vector<double> y(x.size());
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = (t > 0 ? 0.8 * x[t - 1] : 0.0) + rng.normal();
  return {x, y};
}

CausalityReport with_p(double p) {
  CausalityReport r;
  r.p_value = p;
  return r;
}

}  // namespace

TEST_CASE("constant cause is rank deficient") {
  const std::vector<double> x(40, 2.5);
  const auto y = test_support::random_walk(1, 40);
  try {
    (void)granger_pair(x, y, 2);
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::rank_deficient);
  }
}

TEST_CASE("granger preconditions") {
  const auto y = test_support::white_noise(1, 8);
  const auto x = test_support::white_noise(2, 8);
  CHECK_THROWS_AS(granger_pair(x, y, 0), Error);
  try {
    (void)granger_pair(x, y, 3);
    FAIL("expected SeriesTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::series_too_short);
  }
  CHECK_NOTHROW(granger_pair(x, y, 2));
}

TEST_CASE("lagged driver is detected, reverse direction has nominal size") {
  const auto [x, y] = driven(11, 200);
  const auto r = granger_pair(x, y, 1);
  CHECK(r.p_value < 0.01);
  CHECK(r.nobs == 199);
  CHECK(r.lag == 1);

  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto [xs, ys] = driven(seed + 3000, 200);
    if (granger_pair(ys, xs, 1).rejects(Significance::p05)) ++rejections;
  }
  CHECK(rejections >= 35);
  CHECK(rejections <= 65);
}

TEST_CASE("F matches independently fitted restricted and unrestricted regressions") {
  Xoshiro256 rng(77);
  for (int i = 0; i < 100; ++i) {
    const int T = 12 + static_cast<int>(rng.next() % 20);
    const int lag = 1 + static_cast<int>(rng.next() % 3);
    if (T <= 2 * lag + 4) continue;
    const auto x = ar1(rng, T, 0.3);
    const auto y = ar1(rng, T, 0.6);
    const auto r = granger_pair(x, y, lag);
    CHECK_THAT(r.f_stat, WithinRel(granger_f(x, y, lag), 1e-8));
    if (lag == 1) CHECK_THAT(r.f_stat, WithinRel(granger_f_lag1(x, y), 1e-8));
    CHECK(r.nobs == T - lag);
  }
}

TEST_CASE("affine transforms leave the test unchanged") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [x, y] = driven(seed, 60);
    auto x2 = x;
    auto y2 = y;
    for (double& v : x2) v = 4.0 * v + 100.0;
    for (double& v : y2) v = 0.25 * v - 7.0;
    for (int lag : {1, 2, 3}) {
      const auto a = granger_pair(x, y, lag);
      const auto b = granger_pair(x2, y2, lag);
      CHECK_THAT(b.f_stat, WithinAbs(a.f_stat, 1e-8 * std::max(1.0, a.f_stat)));
      CHECK_THAT(b.p_value, WithinAbs(a.p_value, 1e-8));
    }
  }
}

TEST_CASE("size on independent AR(1) series over 2000 seeds") {
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Xoshiro256 rng(seed + 90000);
    const auto x = ar1(rng, 100, 0.5);
    const auto y = ar1(rng, 100, 0.5);
    if (granger_pair(x, y, 2).rejects(Significance::p05)) ++rejections;
  }
  const double rate = rejections / 2000.0;
  CHECK(rate >= 0.035);
  CHECK(rate <= 0.065);
}

TEST_CASE("lag selection minimises the criterion on the common sample") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Xoshiro256 rng(seed);
    const auto x = ar1(rng, 50, 0.7);
    const auto y = ar1(rng, 50, 0.4);
    for (auto crit : {InfoCriterion::aic, InfoCriterion::sic}) {
      int best = 0;
      double best_ic = 0.0;
      const Eigen::Index rows = 50 - 4;
      for (int lag = 1; lag <= 4; ++lag) {
        Eigen::VectorXd v(rows);
        Eigen::MatrixXd U(rows, 1 + 2 * lag);
        for (Eigen::Index r = 0; r < rows; ++r) {
          const auto t = static_cast<std::size_t>(r + 4);
          v(r) = y[t];
          U(r, 0) = 1.0;
          for (int j = 1; j <= lag; ++j) {
            U(r, j) = y[t - static_cast<std::size_t>(j)];
            U(r, lag + j) = x[t - static_cast<std::size_t>(j)];
          }
        }
        const double rss = test_support::rss_normal_equations(v, U);
        const double ic = info_criterion(rss, rows, 1 + 2 * lag, crit);
        if (best == 0 || ic < best_ic) {
          best = lag;
          best_ic = ic;
        }
      }
      CHECK(select_granger_lag(x, y, 4, crit) == best);
    }
  }
}

TEST_CASE("causality_matrix row order and per-pair errors") {
  const auto [x, y] = driven(5, 80);
  const auto z = test_support::white_noise(9, 80);
  const std::vector<double> flat(80, 1.0);
  const auto f = test_support::frame_of({"y", "a", "b", "c"}, {y, x, z, flat});
  const std::vector<std::string> vars{"a", "y", "c", "b"};
  const auto rows = causality_matrix(f, vars, "y", 2);
  REQUIRE(rows.size() == 8);
  const char* expect[][2] = {{"a", "y"}, {"y", "a"}, {"y", "y"}, {"y", "y"},
                             {"c", "y"}, {"y", "c"}, {"b", "y"}, {"y", "b"}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].cause == expect[i][0]);
    CHECK(rows[i].effect == expect[i][1]);
  }
  CHECK(rows[0].ok());
  CHECK(rows[0].rejects(Significance::p01));
  CHECK_FALSE(rows[2].ok());
  CHECK_FALSE(rows[3].ok());
  CHECK_FALSE(rows[4].ok());
  CHECK_FALSE(rows[5].ok());
  CHECK(rows[6].ok());
  CHECK(rows[7].ok());
  CHECK_FALSE(rows[2].rejects(Significance::p10));

  CHECK(causality_matrix(f, vars, "y", 2, 4) == rows);
  const auto auto_lag = causality_matrix(f, std::vector<std::string>{"a"}, "y");
  CHECK(auto_lag[0].lag == select_granger_lag(x, y, 4));
}

TEST_CASE("direction classification from reported p-values") {
  struct Pair {
    double to;
    double from;
    CausalDirection want;
  };
  const Pair pairs[] = {{0.0499, 0.647, CausalDirection::to_dependent},
                        {0.0027, 0.7692, CausalDirection::to_dependent},
                        {0.0072, 0.0283, CausalDirection::bidirectional},
                        {0.0071, 0.1381, CausalDirection::to_dependent},
                        {0.0077, 0.0154, CausalDirection::bidirectional},
                        {0.30, 0.02, CausalDirection::from_dependent},
                        {0.30, 0.40, CausalDirection::none}};
  for (const auto& p : pairs) CHECK(classify(with_p(p.to), with_p(p.from)) == p.want);
  CHECK(classify(with_p(0.0499), with_p(0.647), Significance::p01) == CausalDirection::none);
  auto failed = with_p(0.0);
  failed.error = "boom";
  CHECK(classify(failed, with_p(0.5)) == CausalDirection::none);
}

TEST_CASE("rejection flags follow p < alpha") {
  const auto r = with_p(0.0072);
  CHECK(r.rejects(Significance::p01));
  CHECK(significance_stars(r.p_value) == "***");
  for (double p : {0.001, 0.0099, 0.01, 0.024, 0.025, 0.049, 0.05, 0.099, 0.1, 0.5}) {
    for (auto lvl : kAllLevels) CHECK(with_p(p).rejects(lvl) == (p < alpha(lvl)));
  }
}

TEST_CASE("causality table prints F to five and p to four decimals") {
  PipelineReport report;
  report.dependent = "LCO2";
  report.regressors = {"LREN"};
  CausalitySection s;
  CausalityReport to;
  to.cause = "LREN";
  to.effect = "LCO2";
  to.lag = 2;
  to.nobs = 30;
  to.f_stat = 6.67381;
  to.p_value = 0.0072;
  CausalityReport from = to;
  from.cause = "LCO2";
  from.effect = "LREN";
  from.f_stat = 0.46839;
  from.p_value = 0.0283;
  s.rows = {to, from};
  s.directions = {classify(to, from)};
  report.causality = s;
  const auto files = render(report, OutputFormat::markdown);
  REQUIRE(files.size() == 1);
  CHECK(files[0].name == "causality.md");
  CHECK_THAT(files[0].content, ContainsSubstring("| LREN does not Granger-cause LCO2 | 30 | 6.67381 | 0.0072 |"));
  CHECK_THAT(files[0].content, ContainsSubstring("0.46839"));
  CHECK_THAT(files[0].content, ContainsSubstring("bidirectional"));
}

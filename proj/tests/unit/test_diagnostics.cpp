#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ardlkit/diagnostics.hpp"
#include "ardlkit/error.hpp"
#include "ardlkit/synthetic.hpp"
#include "support.hpp"

using namespace ardlkit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Data {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
};

// X = [1, x_t] with x_t ~ U(1, 5); y = 1 + 0.5 x + u.
Data linear(Xoshiro256& rng, int T, const std::vector<double>& u) {
  Data d{Eigen::VectorXd(T), Eigen::MatrixXd(T, 2)};
  for (int t = 0; t < T; ++t) {
    d.X(t, 0) = 1.0;
    d.X(t, 1) = 1.0 + 4.0 * rng.uniform();
    d.y(t) = 1.0 + 0.5 * d.X(t, 1) + u[static_cast<std::size_t>(t)];
  }
  return d;
}

std::vector<double> noise(Xoshiro256& rng, int T, double sigma = 1.0) {
  std::vector<double> u(static_cast<std::size_t>(T));
  for (double& v : u) v = sigma * rng.normal();
  return u;
}

// Recursive residuals by refitting OLS on the first t-1 rows for every t.
std::vector<double> recursive_by_refit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  const Eigen::Index k = X.cols();
  std::vector<double> w;
  for (Eigen::Index t = k; t < y.size(); ++t) {
    const Eigen::MatrixXd A = X.topRows(t);
    const Eigen::MatrixXd inv = (A.transpose() * A).inverse();
    const Eigen::VectorXd b = inv * A.transpose() * y.head(t);
    const Eigen::RowVectorXd x = X.row(t);
    const double f = 1.0 + (x * inv * x.transpose())(0, 0);
    w.push_back((y(t) - (x * b)(0, 0)) / std::sqrt(f));
  }
  return w;
}

DiagnosticsReport with_p(double jb, double lm, double bpg) {
  DiagnosticsReport r;
  r.jb.p_value = jb;
  r.lm.p_value = lm;
  r.bpg.p_value = bpg;
  return r;
}

}  // namespace

TEST_CASE("jarque_bera hand values") {
  std::vector<double> pm(12);
  for (std::size_t i = 0; i < pm.size(); ++i) pm[i] = i % 2 == 0 ? -1.0 : 1.0;
  const auto a = jarque_bera(pm);
  CHECK_THAT(a.statistic, WithinAbs(2.0, 1e-12));
  CHECK_THAT(a.p_value, WithinAbs(std::exp(-1.0), 1e-12));

  const std::vector<double> five{-2, -1, 0, 1, 2};
  // m2 = 2, m4 = 6.8, K = 1.7: 5/6 * 1.69/4
  CHECK_THAT(jarque_bera(five).statistic, WithinAbs(5.0 / 6.0 * 1.69 / 4.0, 1e-12));
  CHECK_THAT(jarque_bera(five).statistic, WithinAbs(0.35208, 1e-4));
}

TEST_CASE("jarque_bera errors and sign-flip invariance") {
  CHECK_THROWS_AS(jarque_bera(std::vector<double>{1, 2, 3}), Error);
  try {
    (void)jarque_bera(std::vector<double>(10, 0.3));
    FAIL("expected DegenerateResiduals");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_residuals);
  }
  Xoshiro256 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> e(40);
    for (double& v : e) v = std::exp(rng.normal());
    auto flipped = e;
    for (double& v : flipped) v = -v;
    CHECK_THAT(jarque_bera(flipped).statistic, WithinRel(jarque_bera(e).statistic, 1e-12));
  }
}

TEST_CASE("breusch_godfrey on zero residuals") {
  Xoshiro256 rng(1);
  const auto d = linear(rng, 30, std::vector<double>(30, 0.0));
  const auto fit = ols(d.y, d.X);
  const auto bg = breusch_godfrey(fit, d.X, 2);
  CHECK(bg.statistic == 0.0);
  CHECK(bg.p_value == 1.0);
  CHECK_THROWS_AS(breusch_godfrey(fit, d.X, 0), Error);
}

TEST_CASE("breusch_godfrey matches n R^2 of the auxiliary regression") {
  Xoshiro256 rng(8);
  const auto d = linear(rng, 40, noise(rng, 40));
  const auto fit = ols(d.y, d.X);
  Eigen::MatrixXd A(40, 4);
  A.leftCols(2) = d.X;
  A.col(2).setZero();
  A.col(3).setZero();
  for (int t = 1; t < 40; ++t) A(t, 2) = fit.residuals(t - 1);
  for (int t = 2; t < 40; ++t) A(t, 3) = fit.residuals(t - 2);
  const double rss = test_support::rss_normal_equations(fit.residuals, A);
  const double tss = (fit.residuals.array() - fit.residuals.mean()).square().sum();
  const auto bg = breusch_godfrey(fit, d.X, 2);
  CHECK_THAT(bg.statistic, WithinRel(40.0 * (1.0 - rss / tss), 1e-9));
}

TEST_CASE("breusch_godfrey detects AR(1) errors with rho = 0.8") {
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Xoshiro256 rng(seed);
    auto u = noise(rng, 200);
    for (std::size_t t = 1; t < u.size(); ++t) u[t] += 0.8 * u[t - 1];
    const auto d = linear(rng, 200, u);
    if (breusch_godfrey(ols(d.y, d.X), d.X, 2).p_value < 0.01) ++rejections;
  }
  CHECK(rejections >= 495);
}

TEST_CASE("breusch_godfrey size on white noise, T = 200") {
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Xoshiro256 rng(seed + 7000);
    const auto d = linear(rng, 200, noise(rng, 200));
    if (breusch_godfrey(ols(d.y, d.X), d.X, 2).p_value < 0.05) ++rejections;
  }
  const double rate = rejections / 2000.0;
  CHECK(rate >= 0.035);
  CHECK(rate <= 0.065);
}

TEST_CASE("breusch_pagan_godfrey size and power, T = 500") {
  int size = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Xoshiro256 rng(seed + 11000);
    const auto d = linear(rng, 500, noise(rng, 500));
    if (breusch_pagan_godfrey(ols(d.y, d.X), d.X).p_value < 0.05) ++size;
  }
  CHECK(size / 2000.0 >= 0.035);
  CHECK(size / 2000.0 <= 0.065);

  int power = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Xoshiro256 rng(seed + 21000);
    auto d = linear(rng, 500, std::vector<double>(500, 0.0));
    for (int t = 0; t < 500; ++t) d.y(t) += std::sqrt(d.X(t, 1)) * rng.normal();
    if (breusch_pagan_godfrey(ols(d.y, d.X), d.X).p_value < 0.01) ++power;
  }
  CHECK(power >= 475);
}

TEST_CASE("verdicts pass when p exceeds the level") {
  const auto r = with_p(0.2078, 0.5698, 0.7830);
  CHECK(r.jb_verdict() == Verdict::pass);
  CHECK(r.lm_verdict() == Verdict::pass);
  CHECK(r.bpg_verdict() == Verdict::pass);
  CHECK(r.all_pass());
  CHECK(verdict(0.05, Significance::p05) == Verdict::fail);
  CHECK(verdict(0.0501, Significance::p05) == Verdict::pass);
  CHECK_FALSE(with_p(0.2078, 0.01, 0.7830).all_pass());
  CHECK(to_string(Verdict::pass) != to_string(Verdict::fail));
}

TEST_CASE("diagnose bundles the three tests") {
  Xoshiro256 rng(4);
  const auto d = linear(rng, 60, noise(rng, 60));
  const auto fit = ols(d.y, d.X);
  const auto r = diagnose(fit, d.X, 3, Significance::p10);
  CHECK(r.lm_order == 3);
  CHECK(r.level == Significance::p10);
  CHECK(r.jb == jarque_bera(std::vector<double>(fit.residuals.begin(), fit.residuals.end())));
  CHECK(r.lm == breusch_godfrey(fit, d.X, 3));
  CHECK(r.bpg == breusch_pagan_godfrey(fit, d.X));
}

TEST_CASE("recursive residuals on a hand-worked 5-row example") {
  Eigen::VectorXd y(5);
  y << 1, 3, 2, 5, 4;
  Eigen::MatrixXd X(5, 2);
  X << 1, 1, 1, 2, 1, 3, 1, 4, 1, 5;
  // t=3: b=(-1, 2), forecast 5, f = 1 + 5; t=4: b=(1, 0.5), forecast 3, f = 10/3;
  // t=5: b=(0, 1.1), forecast 5.5, f = 2.5.
  const auto w = recursive_residuals(y, X);
  REQUIRE(w.size() == 3);
  CHECK_THAT(w[0], WithinAbs(-3.0 / std::sqrt(6.0), 1e-12));
  CHECK_THAT(w[1], WithinAbs(2.0 / std::sqrt(10.0 / 3.0), 1e-12));
  CHECK_THAT(w[2], WithinAbs(-1.5 / std::sqrt(2.5), 1e-12));
}

TEST_CASE("recursive residuals match refitting") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Xoshiro256 rng(seed);
    const auto d = linear(rng, 40, noise(rng, 40));
    const auto w = recursive_residuals(d.y, d.X);
    const auto want = recursive_by_refit(d.y, d.X);
    REQUIRE(w.size() == want.size());
    for (std::size_t i = 0; i < w.size(); ++i) CHECK_THAT(w[i], WithinAbs(want[i], 1e-9));
  }
}

TEST_CASE("recursive residuals vanish on exact data and need a full-rank start") {
  Xoshiro256 rng(2);
  const auto d = linear(rng, 30, std::vector<double>(30, 0.0));
  for (double v : recursive_residuals(d.y, d.X)) CHECK_THAT(v, WithinAbs(0.0, 1e-9));

  const Eigen::MatrixXd twin = d.X.leftCols(1).replicate(1, 2);
  CHECK_THROWS_AS(recursive_residuals(d.y, twin), Error);
}

TEST_CASE("recursive residual variance equals the error variance") {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Xoshiro256 rng(seed + 500);
    const auto d = linear(rng, 50, noise(rng, 50, 2.0));
    const auto w = recursive_residuals(d.y, d.X);
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(w.size());
    double ss = 0.0;
    for (double v : w) ss += (v - mean) * (v - mean);
    total += ss / static_cast<double>(w.size() - 1);
  }
  CHECK_THAT(total / 2000.0, WithinRel(4.0, 0.10));
}

TEST_CASE("cusum bounds follow the boundary lines") {
  Xoshiro256 rng(6);
  const auto d = linear(rng, 52, noise(rng, 52));
  const auto p = cusum(d.y, d.X);
  REQUIRE(p.values.size() == 50);
  CHECK(p.t_index.front() == 3);
  CHECK(p.t_index.back() == 52);
  const double root = std::sqrt(50.0);
  CHECK_THAT(p.upper.front() - 0.948 * root, WithinAbs(2.0 * 0.948 / root, 1e-12));
  CHECK_THAT(p.lower.front(), WithinAbs(-p.upper.front(), 1e-15));
  CHECK_THAT(p.upper.back(), WithinAbs(3.0 * 0.948 * root, 1e-12));
  CHECK(cusum_boundary_constant(Significance::p10) == 0.850);
  CHECK(cusum_boundary_constant(Significance::p01) == 1.143);
  bool inside = true;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    inside = inside && p.values[i] >= p.lower[i] && p.values[i] <= p.upper[i];
  }
  CHECK(p.stable == inside);
}

TEST_CASE("cusum on exact data is a flat stable path") {
  Xoshiro256 rng(2);
  const auto d = linear(rng, 30, std::vector<double>(30, 0.0));
  const auto p = cusum(d.y, d.X);
  for (double v : p.values) CHECK(v == 0.0);
  CHECK(p.stable);
}

TEST_CASE("cusum is invariant to scaling y") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Xoshiro256 rng(seed);
    const auto d = linear(rng, 60, noise(rng, 60));
    const auto a = cusum(d.y, d.X);
    const auto b = cusum(Eigen::VectorXd(7.5 * d.y), d.X);
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK_THAT(b.values[i], WithinAbs(a.values[i], 1e-8));
  }
}

TEST_CASE("cusum detects an intercept that doubles at T/2") {
  int unstable = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Xoshiro256 rng(seed + 300);
    auto d = linear(rng, 200, noise(rng, 200));
    for (int t = 100; t < 200; ++t) d.y(t) += 1.0;
    if (!cusum(d.y, d.X).stable) ++unstable;
  }
  CHECK(unstable >= 450);
}

TEST_CASE("cusum_sq ends at one and never decreases") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Xoshiro256 rng(seed);
    const auto d = linear(rng, 45, noise(rng, 45));
    const auto p = cusum_sq(d.y, d.X);
    CHECK(p.values.back() == 1.0);
    CHECK(p.values.front() >= 0.0);
    for (std::size_t i = 1; i < p.values.size(); ++i) CHECK(p.values[i] >= p.values[i - 1]);
    const double c0 = cusum_sq_critical_value(43, Significance::p05);
    CHECK_THAT(p.upper.front() - 1.0 / 43.0, WithinAbs(c0, 1e-12));
  }
}

TEST_CASE("cusum_sq critical values shrink with m and grow with confidence") {
  for (int m : {5, 10, 28, 50, 99, 300, 1000, 4000}) {
    CHECK(cusum_sq_critical_value(m, Significance::p10) < cusum_sq_critical_value(m, Significance::p05));
    CHECK(cusum_sq_critical_value(m, Significance::p05) < cusum_sq_critical_value(m, Significance::p01));
    CHECK(cusum_sq_critical_value(m + 1, Significance::p05) <= cusum_sq_critical_value(m, Significance::p05));
  }
}

TEST_CASE("cusum_sq on exact data has no residual variance") {
  Xoshiro256 rng(2);
  const auto d = linear(rng, 30, std::vector<double>(30, 0.0));
  try {
    (void)cusum_sq(d.y, d.X);
    FAIL("expected AllZeroResiduals");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::all_zero_residuals);
  }
}

TEST_CASE("cusum_sq size and variance-break power, T = 200") {
  int stable = 0;
  int broken = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Xoshiro256 rng(seed + 40000);
    const auto d = linear(rng, 200, noise(rng, 200));
    if (cusum_sq(d.y, d.X).stable) ++stable;

    auto u = noise(rng, 200);
    for (std::size_t t = 100; t < u.size(); ++t) u[t] *= 2.0;
    const auto b = linear(rng, 200, u);
    if (!cusum_sq(b.y, b.X).stable) ++broken;
  }
  CHECK(stable >= 450);
  CHECK(broken >= 400);
}

TEST_CASE("stability csv layout") {
  StabilityPath p;
  p.t_index = {3, 4};
  p.values = {0.5, -1.25};
  p.lower = {-2.0, -2.5};
  p.upper = {2.0, 2.5};
  CHECK(stability_csv(p) == "t,value,lower,upper\n3,0.5,-2,2\n4,-1.25,-2.5,2.5\n");
}

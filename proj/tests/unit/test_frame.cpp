#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "ardlkit/error.hpp"
#include "ardlkit/frame.hpp"
#include "support.hpp"

using namespace ardlkit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    (void)load_csv(std::string_view(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected load_csv to throw");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("load_csv parses a two-row file") {
  const auto f = load_csv(std::string_view("year,CO2\n1990,5000\n1991,5100"));
  REQUIRE(f.size() == 2);
  REQUIRE(f.names() == std::vector<std::string>{"CO2"});
  CHECK(f.column("CO2")[0] == 5000.0);
  CHECK(f.column("CO2")[1] == 5100.0);
  CHECK(f.years()[0] == 1990);
}

TEST_CASE("load_csv reports each malformation distinctly") {
  CHECK(code_of("year,CO2\n1991,1\n1990,2") == ErrorCode::non_monotone_years);
  CHECK(code_of("year,CO2\n1990,1\n1990,2") == ErrorCode::duplicate_years);
  CHECK(code_of("year,CO2\n1990,1\n1992,2") == ErrorCode::non_unit_step);
  CHECK(code_of("year,CO2\n1990,1,3\n1991,2") == ErrorCode::ragged_rows);
  CHECK(code_of("year,CO2\n1990,abc") == ErrorCode::non_numeric_cell);
  CHECK(code_of("year,CO2\n") == ErrorCode::empty_body);
  CHECK(code_of("") == ErrorCode::missing_header);
}

TEST_CASE("load_csv keeps a 31-row annual file") {
  std::string text = "year,CO2,GDP\n";
  for (int y = 1990; y <= 2020; ++y) text += std::to_string(y) + "," + std::to_string(5000 + y) + ",1.5\n";
  const auto f = load_csv(std::string_view(text));
  CHECK(f.size() == 31);
  CHECK(f.names() == std::vector<std::string>{"CO2", "GDP"});
  CHECK(f.years().back() == 2020);
}

TEST_CASE("to_csv round-trips through load_csv") {
  const auto f = test_support::frame_of({"a", "b"}, {{0.1, 1.0 / 3.0, 1e-300}, {-2.5, 3e10, 7.0}});
  CHECK(load_csv(std::string_view(to_csv(f))) == f);
}

TEST_CASE("natural_log appends L-prefixed columns") {
  const double e = std::exp(1.0);
  const auto f = test_support::frame_of({"CO2"}, {{1.0, e, e * e}});
  const std::vector<std::string> names{"CO2"};
  const auto g = natural_log(f, names);
  REQUIRE(g.contains("CO2"));
  const auto l = g.column("LCO2");
  CHECK_THAT(l[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(l[1], WithinAbs(1.0, 1e-15));
  CHECK_THAT(l[2], WithinAbs(2.0, 1e-15));

  const auto single = natural_log(test_support::frame_of({"CO2"}, {{5000.0}}), names);
  CHECK_THAT(single.column("LCO2")[0], WithinRel(8.517193191416238, 1e-15));
}

TEST_CASE("natural_log rejects non-positive values") {
  const auto f = test_support::frame_of({"GDP"}, {{1.0, 0.0, 2.0}});
  const std::vector<std::string> names{"GDP"};
  try {
    (void)natural_log(f, names);
    FAIL("expected NonPositiveValue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_positive_value);
    CHECK(std::string(e.what()).find("1991") != std::string::npos);
  }
}

TEST_CASE("difference of first and second order") {
  const std::vector<double> s{1, 3, 6, 10};
  CHECK(difference(s, 1) == std::vector<double>{2, 3, 4});
  CHECK(difference(s, 2) == std::vector<double>{1, 1});
  CHECK(difference(std::vector<double>(5, 7.0), 1) == std::vector<double>(4, 0.0));
  CHECK_THROWS_AS(difference(s, 4), Error);
}

TEST_CASE("lag_matrix columns and alignment") {
  const std::vector<double> s{1, 2, 3, 4};
  const auto m1 = lag_matrix(s, 1);
  REQUIRE(m1.rows() == 3);
  CHECK(m1(0, 0) == 1.0);
  CHECK(m1(2, 0) == 3.0);
  const auto m2 = lag_matrix(s, 2);
  REQUIRE(m2.rows() == 2);
  CHECK(m2(0, 0) == 2.0);
  CHECK(m2(1, 0) == 3.0);
  CHECK(m2(0, 1) == 1.0);
  CHECK(m2(1, 1) == 2.0);
  try {
    (void)lag_matrix(s, 4);
    FAIL("expected SeriesTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::series_too_short);
  }
}

TEST_CASE("log growth property") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ardlkit::Xoshiro256 rng(seed);
    const double a = std::exp(rng.normal());
    const double r = std::exp(0.3 * rng.normal());
    const auto f = test_support::frame_of({"x"}, {{a, a * r}});
    const std::vector<std::string> names{"x"};
    const auto d = difference(natural_log(f, names).column("Lx"), 1);
    REQUIRE(d.size() == 1);
    CHECK_THAT(d[0], WithinAbs(std::log(r), 1e-12));
  }
}

TEST_CASE("difference is linear") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto x = test_support::white_noise(seed, 40);
    const auto y = test_support::white_noise(seed + 1000, 40);
    std::vector<double> sum(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];
    const auto dx = difference(x, 1);
    const auto dy = difference(y, 1);
    const auto ds = difference(sum, 1);
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK_THAT(ds[i], WithinAbs(dx[i] + dy[i], 1e-12));
  }
}

TEST_CASE("lag_matrix rows hold s[t-1..t-k]") {
  const auto s = test_support::white_noise(3, 30);
  for (int k = 1; k <= 5; ++k) {
    const auto m = lag_matrix(s, k);
    REQUIRE(m.rows() == static_cast<Eigen::Index>(s.size()) - k);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto t = static_cast<std::size_t>(i + k);
      for (int j = 0; j < k; ++j) CHECK(m(i, j) == s[t - 1 - static_cast<std::size_t>(j)]);
    }
  }
}

TEST_CASE("frame invariants are enforced at construction") {
  CHECK_THROWS_AS(TimeSeriesFrame({}, {"a"}, {{}}), Error);
  CHECK_THROWS_AS(TimeSeriesFrame({1990, 1991}, {"a", "a"}, {{1, 2}, {3, 4}}), Error);
  CHECK_THROWS_AS(TimeSeriesFrame({1990, 1991}, {"a"}, {{1}}), Error);
  CHECK_THROWS_AS(TimeSeriesFrame({1990, 1991}, {"a"}, {{1, std::nan("")}}), Error);
}

TEST_CASE("ModelSpec validation") {
  const auto f = test_support::frame_of({"y", "x"}, {{1, 2, 3}, {4, 5, 6}});
  ModelSpec ok{"y", {"x"}};
  CHECK_NOTHROW(ok.validate(f));
  ModelSpec self{"y", {"y"}};
  CHECK_THROWS_AS(self.validate(f), Error);
  ModelSpec missing{"y", {"z"}};
  CHECK_THROWS_AS(missing.validate(f), Error);
  ModelSpec empty{"y", {}};
  CHECK_THROWS_AS(empty.validate(f), Error);
}

#include "ardlkit/distributions.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "ardlkit/error.hpp"

namespace ardlkit {
namespace {

namespace bm = boost::math;

void require_df(double df, const char* what) {
  if (!(df > 0.0) || !std::isfinite(df)) {
    fail(ErrorCode::invalid_df, fmt::format("{} degrees of freedom must be positive, got {}", what, df));
  }
}

}  // namespace

double tail_probability(Distribution dist, double stat, DegreesOfFreedom df, Tail tail) {
  if (std::isnan(stat)) fail(ErrorCode::invalid_argument, "statistic is NaN");
  if (tail == Tail::two_sided && (dist == Distribution::chi_squared || dist == Distribution::fisher_f)) {
    fail(ErrorCode::invalid_argument, "two-sided tail requested for an asymmetric distribution");
  }
  switch (dist) {
    case Distribution::normal: {
      const bm::normal_distribution<double> d;
      if (tail == Tail::two_sided) {
        if (std::isinf(stat)) return 0.0;
        return std::min(1.0, 2.0 * bm::cdf(bm::complement(d, std::abs(stat))));
      }
      if (std::isinf(stat)) return stat > 0 ? 0.0 : 1.0;
      return bm::cdf(bm::complement(d, stat));
    }
    case Distribution::student_t: {
      require_df(df.first, "t");
      const bm::students_t_distribution<double> d(df.first);
      if (tail == Tail::two_sided) {
        if (std::isinf(stat)) return 0.0;
        return std::min(1.0, 2.0 * bm::cdf(bm::complement(d, std::abs(stat))));
      }
      if (std::isinf(stat)) return stat > 0 ? 0.0 : 1.0;
      return bm::cdf(bm::complement(d, stat));
    }
    case Distribution::chi_squared: {
      require_df(df.first, "chi-squared");
      if (stat <= 0.0) return 1.0;
      if (std::isinf(stat)) return 0.0;
      return bm::cdf(bm::complement(bm::chi_squared_distribution<double>(df.first), stat));
    }
    case Distribution::fisher_f: {
      require_df(df.first, "F numerator");
      require_df(df.second, "F denominator");
      if (stat <= 0.0) return 1.0;
      if (std::isinf(stat)) return 0.0;
      return bm::cdf(bm::complement(bm::fisher_f_distribution<double>(df.first, df.second), stat));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Wichura (1988), algorithm AS 241 (PPND16). Pure arithmetic plus log/sqrt, so
// the synthetic generators produce the same normals on every IEEE-754 platform.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    fail(ErrorCode::invalid_argument, fmt::format("normal quantile needs 0 < p < 1, got {}", p));
  }
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value = 0.0;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                 1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                 0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                 0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                 7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

}  // namespace ardlkit

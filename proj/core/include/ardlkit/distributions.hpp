#pragma once

namespace ardlkit {

enum class Distribution { normal, student_t, chi_squared, fisher_f };

struct DegreesOfFreedom {
  double first = 0.0;
  double second = 0.0;
};

enum class Tail { upper, two_sided };

/// Upper-tail probability P(X > stat). `Tail::two_sided` is only meaningful for
/// the symmetric families (normal, t) and returns P(|X| > |stat|).
/// Throws InvalidDf when the degrees of freedom are not valid for the family.
double tail_probability(Distribution dist, double stat, DegreesOfFreedom df = {},
                        Tail tail = Tail::upper);

double normal_quantile(double p);

}  // namespace ardlkit

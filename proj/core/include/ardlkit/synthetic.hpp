#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ardlkit/frame.hpp"

namespace ardlkit {

/// xoshiro256** (Blackman-Vigna) seeded by four successive splitmix64 outputs
/// of the 64-bit seed.
///
///   result = rotl(s1 * 5, 7) * 9
///   t = s1 << 17; s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
///
/// uniform() = (next() >> 11) * 2^-53 + 2^-54, strictly inside (0, 1).
/// normal() = normal_quantile(uniform()) (Wichura AS241 inverse CDF).
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) noexcept;
  /// Raw state constructor, used to check published reference outputs.
  explicit Xoshiro256(const std::array<std::uint64_t, 4>& state) noexcept : s_(state) {}

  std::uint64_t next() noexcept;
  double uniform() noexcept;
  double normal() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// y_t = y_{t-1} + drift + sigma e_t, y_0 = sigma e_0. `extra` independent
/// copies x1..x_extra are drawn after y in each period.
struct RandomWalk {
  double drift = 0.0;
  double sigma = 1.0;
  int extra = 0;
};

/// y_t = rho y_{t-1} + sigma e_t, started from the stationary distribution
/// when |rho| < 1 and from sigma e_0 otherwise. `extra` as for RandomWalk.
struct Ar1 {
  double rho = 0.0;
  double sigma = 1.0;
  int extra = 0;
};

/// Cointegrated system with k random-walk regressors:
///   x_{i,t} = x_{i,t-1} + x_drift_i + x_sigma u_{i,t}
///   y_t = y_{t-1} + alpha (y_{t-1} - beta' x_{t-1} - c) + delta' dx_t + sigma e_t
/// with x_0 = x_start and y_0 = c + beta' x_0 + sigma e_0. Each period draws
/// u_{1..k,t} and then e_t. Empty delta, x_drift and x_start mean zeros.
struct EcmSystem {
  std::vector<double> beta{1.0};
  double alpha = -0.3;
  double sigma = 1.0;
  double c = 0.0;
  std::vector<double> delta;
  double x_sigma = 1.0;
  std::vector<double> x_drift;
  std::vector<double> x_start;
};

/// Process, length and seed. Output columns are "y" then "x1".."xk"; years
/// run 1..T.
struct Dgp {
  std::variant<RandomWalk, Ar1, EcmSystem> process = RandomWalk{};
  int T = 100;
  std::uint64_t seed = 0;
};

/// Throws InvalidParams when T < 10, a sigma is not positive, |1 + alpha| >= 1
/// or a parameter vector does not match k.
TimeSeriesFrame generate(const Dgp& dgp);

struct McOutcome {
  double statistic = 0.0;
  bool reject = false;
};

using McProcedure = std::function<McOutcome(const TimeSeriesFrame&)>;

struct McReplication {
  int replication = 0;
  std::uint64_t seed = 0;
  double statistic = 0.0;
  bool reject = false;
  std::optional<std::string> error;
};

struct McResult {
  double rate = 0.0;  // rejections / successful replications
  int rejections = 0;
  int failures = 0;
  std::vector<McReplication> replications;
};

/// Replication r runs `test` on generate(dgp with seed = dgp.seed + r).
/// Library errors inside a replication are recorded; more than 1% failed
/// replications throws ReplicationFailures. Requires reps >= 100.
McResult monte_carlo(const McProcedure& test, const Dgp& dgp, int reps, int jobs = 1);

double mc_rejection_rate(const McProcedure& test, const Dgp& dgp, int reps, int jobs = 1);

/// CSV with header `replication,statistic,reject`; failed replications carry
/// an empty statistic and reject.
std::string mc_csv(const McResult& result);

}  // namespace ardlkit

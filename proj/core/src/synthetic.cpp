#include "ardlkit/synthetic.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ardlkit/distributions.hpp"
#include "ardlkit/error.hpp"
#include "ardlkit/parallel.hpp"

namespace ardlkit {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

std::vector<int> year_index(int T) {
  std::vector<int> years(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) years[static_cast<std::size_t>(t)] = t + 1;
  return years;
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::invalid_params, what);
}

std::vector<std::string> column_names(std::size_t k) {
  std::vector<std::string> names{"y"};
  for (std::size_t i = 0; i < k; ++i) names.push_back(fmt::format("x{}", i + 1));
  return names;
}

std::vector<double> or_zeros(const std::vector<double>& v, std::size_t k, const char* name) {
  if (v.empty()) return std::vector<double>(k, 0.0);
  require(v.size() == k, fmt::format("{} has {} entries, expected {}", name, v.size(), k));
  return v;
}

// Columns y, x1..x_extra; period t draws y's shock first, then the extras.
template <class Step>
TimeSeriesFrame independent(int T, int extra, double start_scale, double sigma, Xoshiro256& rng, Step step) {
  require(sigma > 0.0, "sigma must be positive");
  require(extra >= 0, "extra must be >= 0");
  const auto m = static_cast<std::size_t>(extra) + 1;
  std::vector<std::vector<double>> cols(m, std::vector<double>(static_cast<std::size_t>(T)));
  for (auto& c : cols) c[0] = start_scale * rng.normal();
  for (std::size_t t = 1; t < static_cast<std::size_t>(T); ++t) {
    for (auto& c : cols) c[t] = step(c[t - 1]) + sigma * rng.normal();
  }
  return TimeSeriesFrame(year_index(T), column_names(m - 1), std::move(cols));
}

TimeSeriesFrame run(const RandomWalk& p, int T, Xoshiro256& rng) {
  return independent(T, p.extra, p.sigma, p.sigma, rng, [&](double prev) { return prev + p.drift; });
}

TimeSeriesFrame run(const Ar1& p, int T, Xoshiro256& rng) {
  const double scale = std::abs(p.rho) < 1.0 ? p.sigma / std::sqrt(1.0 - p.rho * p.rho) : p.sigma;
  return independent(T, p.extra, scale, p.sigma, rng, [&](double prev) { return p.rho * prev; });
}

TimeSeriesFrame run(const EcmSystem& p, int T, Xoshiro256& rng) {
  const std::size_t k = p.beta.size();
  require(k >= 1, "beta must have at least one entry");
  require(p.sigma > 0.0 && p.x_sigma > 0.0, "sigma must be positive");
  require(std::abs(1.0 + p.alpha) < 1.0, fmt::format("|1 + alpha| must be < 1, alpha = {}", p.alpha));
  const auto delta = or_zeros(p.delta, k, "delta");
  const auto drift = or_zeros(p.x_drift, k, "x_drift");
  const auto start = or_zeros(p.x_start, k, "x_start");

  const auto n = static_cast<std::size_t>(T);
  std::vector<std::vector<double>> cols(k + 1, std::vector<double>(n));
  auto& y = cols[0];
  double eq = p.c;
  for (std::size_t i = 0; i < k; ++i) {
    cols[i + 1][0] = start[i];
    eq += p.beta[i] * start[i];
  }
  y[0] = eq + p.sigma * rng.normal();
  for (std::size_t t = 1; t < n; ++t) {
    double gap = y[t - 1] - p.c;
    double shortrun = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      auto& x = cols[i + 1];
      const double dx = drift[i] + p.x_sigma * rng.normal();
      x[t] = x[t - 1] + dx;
      gap -= p.beta[i] * x[t - 1];
      shortrun += delta[i] * dx;
    }
    y[t] = y[t - 1] + p.alpha * gap + shortrun + p.sigma * rng.normal();
  }
  return TimeSeriesFrame(year_index(T), column_names(k), std::move(cols));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double Xoshiro256::normal() noexcept { return normal_quantile(uniform()); }

TimeSeriesFrame generate(const Dgp& dgp) {
  require(dgp.T >= 10, fmt::format("T must be at least 10, got {}", dgp.T));
  Xoshiro256 rng(dgp.seed);
  return std::visit([&](const auto& p) { return run(p, dgp.T, rng); }, dgp.process);
}

McResult monte_carlo(const McProcedure& test, const Dgp& dgp, int reps, int jobs) {
  if (reps < 100) fail(ErrorCode::invalid_argument, fmt::format("need at least 100 replications, got {}", reps));
  McResult out;
  out.replications.resize(static_cast<std::size_t>(reps));
  parallel_for(out.replications.size(), jobs, [&](std::size_t r) {
    auto& rec = out.replications[r];
    rec.replication = static_cast<int>(r);
    rec.seed = dgp.seed + r;
    Dgp d = dgp;
    d.seed = rec.seed;
    try {
      const auto o = test(generate(d));
      rec.statistic = o.statistic;
      rec.reject = o.reject;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::invalid_params) throw;
      rec.error = e.what();
    }
  });
  for (const auto& rec : out.replications) {
    if (rec.error) {
      ++out.failures;
    } else if (rec.reject) {
      ++out.rejections;
    }
  }
  if (100 * out.failures > reps) {
    fail(ErrorCode::replication_failures,
         fmt::format("{} of {} replications failed; first: {}", out.failures, reps,
                     [&] {
                       for (const auto& rec : out.replications) {
                         if (rec.error) return *rec.error;
                       }
                       return std::string{};
                     }()));
  }
  const int ok = reps - out.failures;
  out.rate = ok > 0 ? static_cast<double>(out.rejections) / ok : 0.0;
  return out;
}

double mc_rejection_rate(const McProcedure& test, const Dgp& dgp, int reps, int jobs) {
  return monte_carlo(test, dgp, reps, jobs).rate;
}

std::string mc_csv(const McResult& result) {
  std::string out = "replication,statistic,reject\n";
  for (const auto& rec : result.replications) {
    if (rec.error) {
      out += fmt::format("{},,\n", rec.replication);
    } else {
      out += fmt::format("{},{},{}\n", rec.replication, rec.statistic, rec.reject ? 1 : 0);
    }
  }
  return out;
}

}  // namespace ardlkit

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ardlkit/frame.hpp"
#include "ardlkit/synthetic.hpp"

namespace test_support {

inline std::vector<double> random_walk(std::uint64_t seed, int T, double sigma = 1.0) {
  ardlkit::Xoshiro256 rng(seed);
  std::vector<double> y(static_cast<std::size_t>(T));
  double level = 0.0;
  for (auto& v : y) {
    level += sigma * rng.normal();
    v = level;
  }
  return y;
}

inline std::vector<double> white_noise(std::uint64_t seed, int T, double sigma = 1.0) {
  ardlkit::Xoshiro256 rng(seed);
  std::vector<double> e(static_cast<std::size_t>(T));
  for (auto& v : e) v = sigma * rng.normal();
  return e;
}

inline std::vector<int> years(int n, int first = 1990) {
  std::vector<int> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = first + i;
  return y;
}

inline ardlkit::TimeSeriesFrame frame_of(std::vector<std::string> names, std::vector<std::vector<double>> cols) {
  const int n = static_cast<int>(cols.front().size());
  return ardlkit::TimeSeriesFrame(years(n), std::move(names), std::move(cols));
}

/// Residual sum of squares of y on X by the normal equations in long double,
/// a code path independent of the library's QR.
inline double rss_normal_equations(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const MatL Xl = X.cast<long double>();
  const VecL yl = y.cast<long double>();
  const VecL b = (Xl.transpose() * Xl).ldlt().solve(Xl.transpose() * yl);
  const VecL e = yl - Xl * b;
  return static_cast<double>(e.squaredNorm());
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace test_support

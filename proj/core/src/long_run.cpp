#include "ardlkit/long_run.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ardlkit/error.hpp"

namespace ardlkit {

int newey_west_bandwidth(Eigen::Index n) {
  return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

int resolve_bandwidth(const KernelSpec& spec, Eigen::Index n) {
  const int l = spec.bandwidth ? *spec.bandwidth : newey_west_bandwidth(n);
  if (l < 0) fail(ErrorCode::invalid_argument, "bandwidth must be >= 0");
  if (l >= n) {
    fail(ErrorCode::bandwidth_too_large, fmt::format("bandwidth {} with only {} observations", l, n));
  }
  return l;
}

double long_run_variance(const Eigen::VectorXd& u, const KernelSpec& spec) {
  const Eigen::Index n = u.size();
  if (n < 2) fail(ErrorCode::series_too_short, "long-run variance needs at least 2 observations");
  const int l = resolve_bandwidth(spec, n);
  const Eigen::VectorXd e = u.array() - u.mean();
  const double nn = static_cast<double>(n);
  double lrv = e.squaredNorm() / nn;
  for (int j = 1; j <= l; ++j) {
    const double gamma = e.tail(n - j).dot(e.head(n - j)) / nn;
    const double w = 1.0 - static_cast<double>(j) / static_cast<double>(l + 1);
    lrv += 2.0 * w * gamma;
  }
  return lrv;
}

double long_run_variance(std::span<const double> u, const KernelSpec& spec) {
  return long_run_variance(
      Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size())), spec);
}

LongRunCovariance long_run_covariance(const Eigen::MatrixXd& V, const KernelSpec& spec) {
  const Eigen::Index n = V.rows();
  if (n < 2) fail(ErrorCode::series_too_short, "long-run covariance needs at least 2 observations");
  LongRunCovariance out;
  out.bandwidth = resolve_bandwidth(spec, n);
  const Eigen::MatrixXd E = V.rowwise() - V.colwise().mean();
  const double nn = static_cast<double>(n);
  out.contemporaneous = E.transpose() * E / nn;
  out.one_sided = out.contemporaneous;
  out.omega = out.contemporaneous;
  for (int j = 1; j <= out.bandwidth; ++j) {
    // (1/n) sum_t v_{t-j} v_t'
    const Eigen::MatrixXd G = E.topRows(n - j).transpose() * E.bottomRows(n - j) / nn;
    const double w = 1.0 - static_cast<double>(j) / static_cast<double>(out.bandwidth + 1);
    out.one_sided += w * G;
    out.omega += w * (G + G.transpose());
  }
  return out;
}

}  // namespace ardlkit

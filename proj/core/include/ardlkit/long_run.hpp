#pragma once

#include <optional>
#include <span>

#include <Eigen/Dense>

namespace ardlkit {

enum class Kernel { bartlett };

/// Kernel and truncation lag for HAC long-run variance estimates. An empty
/// bandwidth selects the Newey-West rule floor(4 (n/100)^(2/9)).
struct KernelSpec {
  Kernel kernel = Kernel::bartlett;
  std::optional<int> bandwidth;

  static KernelSpec automatic() { return {}; }
  static KernelSpec fixed(int lag) { return {Kernel::bartlett, lag}; }
};

int newey_west_bandwidth(Eigen::Index n);
int resolve_bandwidth(const KernelSpec& spec, Eigen::Index n);

/// Bartlett-weighted long-run variance of the demeaned series, autocovariances
/// with divisor n. Bandwidth 0 gives the sample variance.
double long_run_variance(std::span<const double> u, const KernelSpec& spec);
double long_run_variance(const Eigen::VectorXd& u, const KernelSpec& spec);

/// Multivariate counterpart for the rows-are-time matrix V (n x m), demeaned
/// column-wise. With G_j = (1/n) sum_t v_{t-j} v_t':
///   contemporaneous = G_0
///   one_sided       = sum_{j=0..l} w_j G_j        (lag 0 included)
///   omega           = G_0 + sum_{j=1..l} w_j (G_j + G_j')
/// Entry (a, b) of one_sided estimates sum_{j>=0} cov(v_a,t , v_b,t+j).
struct LongRunCovariance {
  Eigen::MatrixXd contemporaneous;
  Eigen::MatrixXd one_sided;
  Eigen::MatrixXd omega;
  int bandwidth = 0;
};

LongRunCovariance long_run_covariance(const Eigen::MatrixXd& V, const KernelSpec& spec);

}  // namespace ardlkit

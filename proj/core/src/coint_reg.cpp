#include "ardlkit/coint_reg.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ardlkit/error.hpp"
#include "ardlkit/regression.hpp"

namespace ardlkit {
namespace {

// Rows t = 1..n-1: y_t, [x_t, 1] and dx_t.
struct CointData {
  Eigen::VectorXd y;
  Eigen::MatrixXd Z;   // regressors then intercept
  Eigen::MatrixXd dX;  // first differences of the regressors
  std::vector<std::string> names;
};

CointData prepare(const TimeSeriesFrame& frame, const ModelSpec& spec, std::size_t min_n) {
  spec.validate(frame);
  if (frame.size() < min_n) {
    fail(ErrorCode::series_too_short, fmt::format("need at least {} observations, have {}", min_n, frame.size()));
  }
  const auto n = static_cast<Eigen::Index>(frame.size());
  const auto k = static_cast<Eigen::Index>(spec.regressors.size());
  CointData d;
  d.y.resize(n - 1);
  d.Z.resize(n - 1, k + 1);
  d.dX.resize(n - 1, k);
  const auto y = frame.column(spec.dependent);
  for (Eigen::Index t = 1; t < n; ++t) d.y(t - 1) = y[static_cast<std::size_t>(t)];
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto x = frame.column(spec.regressors[static_cast<std::size_t>(j)]);
    for (Eigen::Index t = 1; t < n; ++t) {
      const auto s = static_cast<std::size_t>(t);
      d.Z(t - 1, j) = x[s];
      d.dX(t - 1, j) = x[s] - x[s - 1];
    }
  }
  d.Z.col(k).setOnes();
  d.names = spec.regressors;
  d.names.emplace_back("C");
  return d;
}

double centred_r2(const Eigen::VectorXd& y, const Eigen::VectorXd& residuals) {
  const double tss = (y.array() - y.mean()).square().sum();
  return tss > 0.0 ? 1.0 - residuals.squaredNorm() / tss : 0.0;
}

std::vector<CointCoefficient> tabulate(const std::vector<std::string>& names, const Eigen::VectorXd& coef,
                                       const Eigen::MatrixXd& cov) {
  std::vector<CointCoefficient> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const double se = std::sqrt(std::max(0.0, cov(idx, idx)));
    out.push_back({names[i], coef(idx), se, se > 0.0 ? coef(idx) / se : 0.0});
  }
  return out;
}

// Long-run blocks of v_t = (u_t, dx_t') shared by FMOLS and CCR.
struct LongRunBlocks {
  LongRunCovariance lrc;
  Eigen::MatrixXd V;            // demeaned v_t rows
  Eigen::MatrixXd omega22_inv;
  Eigen::VectorXd omega21;
  double omega_1_2 = 0.0;
  RegressionResult first_stage;
};

LongRunBlocks long_run_blocks(const CointData& d, const KernelSpec& kernel) {
  LongRunBlocks b;
  b.first_stage = ols(d.y, d.Z, d.names);
  const Eigen::Index k = d.dX.cols();
  Eigen::MatrixXd V(d.y.size(), k + 1);
  V.col(0) = b.first_stage.residuals;
  V.rightCols(k) = d.dX;
  b.lrc = long_run_covariance(V, kernel);
  b.V = V.rowwise() - V.colwise().mean();

  const Eigen::MatrixXd omega22 = b.lrc.omega.bottomRightCorner(k, k);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(omega22, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  if (!(top > 0.0) || eig.eigenvalues().minCoeff() <= 1e-12 * top) {
    fail(ErrorCode::singular_omega22, "long-run covariance of the regressor differences is not invertible");
  }
  b.omega22_inv = omega22.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
  b.omega21 = b.lrc.omega.bottomLeftCorner(k, 1);
  b.omega_1_2 = b.lrc.omega(0, 0) - (b.omega21.transpose() * b.omega22_inv * b.omega21)(0, 0);
  return b;
}

}  // namespace

std::string_view to_string(CointMethod m) noexcept {
  switch (m) {
    case CointMethod::ols: return "OLS";
    case CointMethod::fmols: return "FMOLS";
    case CointMethod::dols: return "DOLS";
    case CointMethod::ccr: return "CCR";
  }
  return "OLS";
}

const CointCoefficient& CointEstimate::at(std::string_view name) const {
  for (const auto& c : coefficients) {
    if (c.name == name) return c;
  }
  fail(ErrorCode::unknown_column, fmt::format("no coefficient '{}'", name));
}

CointEstimate static_ols(const TimeSeriesFrame& frame, const ModelSpec& spec) {
  const auto d = prepare(frame, spec, spec.k() + 3);
  const auto fit = ols(d.y, d.Z, d.names);
  CointEstimate e;
  e.method = CointMethod::ols;
  e.coefficients = tabulate(d.names, fit.coef, fit.covariance());
  e.r2 = fit.r2;
  e.long_run_variance = fit.sigma2;
  e.nobs = fit.nobs;
  return e;
}

CointEstimate fmols(const TimeSeriesFrame& frame, const ModelSpec& spec, const KernelSpec& kernel) {
  const auto d = prepare(frame, spec, 20);
  const auto b = long_run_blocks(d, kernel);
  const Eigen::Index k = d.dX.cols();
  const auto m = static_cast<double>(d.y.size());

  // y+ = y - omega12 omega22^-1 dx ; bias delta+_21 = delta21 - delta22 omega22^-1 omega21
  const Eigen::VectorXd adj = b.omega22_inv * b.omega21;
  const Eigen::VectorXd y_plus = d.y - b.V.rightCols(k) * adj;
  const Eigen::MatrixXd& delta = b.lrc.one_sided;
  const Eigen::VectorXd delta_plus = delta.bottomLeftCorner(k, 1) - delta.bottomRightCorner(k, k) * adj;

  Eigen::VectorXd rhs = d.Z.transpose() * y_plus;
  rhs.head(k) -= m * delta_plus;
  const Eigen::MatrixXd& ztz_inv = b.first_stage.xtx_inverse;
  const Eigen::VectorXd beta = ztz_inv * rhs;

  CointEstimate e;
  e.method = CointMethod::fmols;
  e.coefficients = tabulate(d.names, beta, b.omega_1_2 * ztz_inv);
  e.r2 = centred_r2(d.y, d.y - d.Z * beta);
  e.bandwidth = b.lrc.bandwidth;
  e.long_run_variance = b.omega_1_2;
  e.nobs = d.y.size();
  return e;
}

CointEstimate ccr(const TimeSeriesFrame& frame, const ModelSpec& spec, const KernelSpec& kernel) {
  const auto d = prepare(frame, spec, 20);
  const auto b = long_run_blocks(d, kernel);
  const Eigen::Index k = d.dX.cols();

  const Eigen::MatrixXd& sigma = b.lrc.contemporaneous;
  const Eigen::FullPivLU<Eigen::MatrixXd> sigma_lu(sigma);
  if (!sigma_lu.isInvertible()) {
    fail(ErrorCode::singular_omega22, "contemporaneous covariance of (u, dx) is singular");
  }
  // transform matrix A = Sigma^-1 Delta_{2.}' , (k+1) x k
  const Eigen::MatrixXd A = sigma_lu.solve(b.lrc.one_sided.bottomRows(k).transpose());
  const Eigen::VectorXd beta_ols = b.first_stage.coef.head(k);
  Eigen::VectorXd shift = A * beta_ols;
  shift.tail(k) += b.omega22_inv * b.omega21;

  Eigen::MatrixXd Z_star = d.Z;
  Z_star.leftCols(k) -= b.V * A;
  const Eigen::VectorXd y_star = d.y - b.V * shift;
  const auto fit = ols(y_star, Z_star, d.names);

  CointEstimate e;
  e.method = CointMethod::ccr;
  e.coefficients = tabulate(d.names, fit.coef, b.omega_1_2 * fit.xtx_inverse);
  e.r2 = centred_r2(d.y, d.y - d.Z * fit.coef);
  e.bandwidth = b.lrc.bandwidth;
  e.long_run_variance = b.omega_1_2;
  e.nobs = fit.nobs;
  return e;
}

CointEstimate dols(const TimeSeriesFrame& frame, const ModelSpec& spec, int leads, int lags,
                   const KernelSpec& kernel) {
  if (leads < 0 || lags < 0) fail(ErrorCode::invalid_argument, "DOLS leads and lags must be >= 0");
  spec.validate(frame);
  const auto k = static_cast<Eigen::Index>(spec.regressors.size());
  const std::size_t min_n = static_cast<std::size_t>(leads + lags) + spec.k() + 10;
  if (frame.size() < min_n) {
    fail(ErrorCode::series_too_short,
         fmt::format("DOLS({}, {}) needs at least {} observations, have {}", leads, lags, min_n, frame.size()));
  }
  const auto n = static_cast<Eigen::Index>(frame.size());
  const Eigen::Index first = lags + 1;
  const Eigen::Index last = n - 1 - leads;
  const Eigen::Index rows = last - first + 1;
  const Eigen::Index window = leads + lags + 1;

  Eigen::VectorXd y(rows);
  Eigen::MatrixXd X(rows, k + 1 + k * window);
  std::vector<std::string> names = spec.regressors;
  names.emplace_back("C");
  for (const auto& r : spec.regressors) {
    for (int j = -lags; j <= leads; ++j) {
      names.push_back(j == 0 ? "D." + r : fmt::format("D.{}({:+d})", r, j));
    }
  }
  const auto ys = frame.column(spec.dependent);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto t = static_cast<std::size_t>(first + r);
    y(r) = ys[t];
    X(r, k) = 1.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto x = frame.column(spec.regressors[static_cast<std::size_t>(i)]);
      X(r, i) = x[t];
      for (int j = -lags; j <= leads; ++j) {
        const auto s = static_cast<std::size_t>(static_cast<Eigen::Index>(t) + j);
        X(r, k + 1 + i * window + (j + lags)) = x[s] - x[s - 1];
      }
    }
  }
  const auto fit = ols(y, X, names);
  const double lrv = long_run_variance(fit.residuals, kernel);

  CointEstimate e;
  e.method = CointMethod::dols;
  const std::vector<std::string> reported(names.begin(), names.begin() + k + 1);
  e.coefficients = tabulate(reported, fit.coef.head(k + 1), lrv * fit.xtx_inverse.topLeftCorner(k + 1, k + 1));
  e.r2 = fit.r2;
  e.bandwidth = resolve_bandwidth(kernel, fit.nobs);
  e.leads = leads;
  e.lags = lags;
  e.long_run_variance = lrv;
  e.nobs = fit.nobs;
  return e;
}

}  // namespace ardlkit

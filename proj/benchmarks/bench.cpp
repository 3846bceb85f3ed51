#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ardlkit/ardl.hpp"
#include "ardlkit/pipeline.hpp"
#include "ardlkit/regression.hpp"
#include "ardlkit/synthetic.hpp"
#include "ardlkit/unit_root.hpp"

using namespace ardlkit;

namespace {

void BM_Ols(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Xoshiro256 rng(1);
  Eigen::MatrixXd X(n, 6);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    for (int j = 1; j < 6; ++j) X(i, j) = rng.normal();
    y(i) = X.row(i).sum() + rng.normal();
  }
  for (auto _ : state) benchmark::DoNotOptimize(ols(y, X));
}
BENCHMARK(BM_Ols)->Arg(33)->Arg(500)->Arg(5000);

void BM_Adf(benchmark::State& state) {
  const auto frame = generate(Dgp{RandomWalk{}, static_cast<int>(state.range(0)), 2});
  const auto y = frame.column("y");
  for (auto _ : state) benchmark::DoNotOptimize(adf(y));
}
BENCHMARK(BM_Adf)->Arg(100)->Arg(1000);

void BM_ArdlGrid(benchmark::State& state) {
  EcmSystem p;
  p.beta = {0.3, -0.1, -0.2};
  p.alpha = -0.4;
  const auto frame = generate(Dgp{p, 200, 3});
  ModelSpec spec;
  spec.dependent = "y";
  spec.regressors = {"x1", "x2", "x3"};
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(select_ardl_lags(frame, spec, InfoCriterion::aic, jobs));
}
BENCHMARK(BM_ArdlGrid)->Arg(1)->Arg(4);

void BM_Pipeline(benchmark::State& state) {
  const std::filesystem::path path = std::filesystem::path(ARDLKIT_DATA_DIR) / "fixture.json";
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  auto config = parse_config(text.str());
  config.data = (path.parent_path() / config.data).string();
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(config));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

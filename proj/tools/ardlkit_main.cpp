// ardlkit command-line tool.
//
// Exit status: 0 success, 1 usage/config error, 2 data error, 3 numerical
// failure, 4 precondition failure (possible I(2) series).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ardlkit/ardl.hpp"
#include "ardlkit/causality.hpp"
#include "ardlkit/error.hpp"
#include "ardlkit/pipeline.hpp"
#include "ardlkit/render.hpp"
#include "ardlkit/synthetic.hpp"
#include "ardlkit/unit_root.hpp"

namespace {

using namespace ardlkit;

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage: return 1;
    case ErrorCategory::data: return 2;
    case ErrorCategory::numerical: return 3;
    case ErrorCategory::precondition: return 4;
  }
  return 3;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail(ErrorCode::io_error, fmt::format("cannot write {}", path));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Flags shared by the analysis subcommands; unset flags leave the config value alone.
struct AnalysisFlags {
  std::string config_path;
  std::string data;
  std::string dependent;
  std::string regressors;
  bool no_log = false;
  std::optional<int> max_p, max_q, dols_leads, dols_lags, lm_order, jobs;
  std::string criterion, deterministic, granger_lag, bandwidth, bounds_table, output_dir, format;
  std::optional<double> level;

  void attach(CLI::App* app) {
    app->add_option("data", data, "CSV file with a `year` column")->type_name("CSV");
    app->add_option("-c,--config", config_path, "flat JSON config; flags override its values");
    app->add_option("-y,--dependent", dependent, "dependent variable");
    app->add_option("-x,--regressors", regressors, "comma-separated regressors");
    app->add_flag("--no-log", no_log, "analyse columns as given instead of their natural logs");
    app->add_option("--max-p", max_p, "maximum dependent-variable lag (ARDL)");
    app->add_option("--max-q", max_q, "maximum regressor lag (ARDL)");
    app->add_option("--criterion", criterion, "aic, sic or hq");
    app->add_option("--deterministic", deterministic, "constant or constant_trend (unit-root tests)");
    app->add_option("--level", level, "significance level: 0.01, 0.025, 0.05 or 0.1");
    app->add_option("--granger-lag", granger_lag, "integer or auto");
    app->add_option("--bandwidth", bandwidth, "Bartlett bandwidth: integer or auto");
    app->add_option("--dols-leads", dols_leads, "DOLS leads");
    app->add_option("--dols-lags", dols_lags, "DOLS lags");
    app->add_option("--lm-order", lm_order, "Breusch-Godfrey order");
    app->add_option("--bounds-table", bounds_table, "k5 or pesaran");
    app->add_option("-o,--output-dir", output_dir, "directory for rendered tables");
    app->add_option("-f,--format", format, "markdown, csv or json");
    app->add_option("-j,--jobs", jobs, "worker threads");
  }

  [[nodiscard]] PipelineConfig resolve() const {
    PipelineConfig c;
    if (!config_path.empty()) {
      c = parse_config(read_file(config_path));
      // relative data paths in a config file are relative to that file
      const std::filesystem::path d = c.data;
      if (!c.data.empty() && d.is_relative()) {
        c.data = (std::filesystem::path(config_path).parent_path() / d).lexically_normal().string();
      }
    }
    apply_overrides(c);
    return c;
  }

 private:
  void apply_overrides(PipelineConfig& c) const {
    if (!data.empty()) c.data = data;
    if (!dependent.empty()) c.dependent = dependent;
    if (!regressors.empty()) c.regressors = split_list(regressors);
    if (no_log) c.log_transform = false;
    if (max_p) c.max_p = *max_p;
    if (max_q) c.max_q = *max_q;
    if (!criterion.empty()) c.criterion = info_criterion_from_string(criterion);
    if (!deterministic.empty()) {
      c = parse_config(fmt::format("{{\"deterministic\": \"{}\"}}", deterministic), c);
    }
    if (level) c.level = significance_from_alpha(*level);
    if (!granger_lag.empty()) c.granger_lag = auto_or_int(granger_lag, "--granger-lag");
    if (!bandwidth.empty()) c.bandwidth = auto_or_int(bandwidth, "--bandwidth");
    if (dols_leads) c.dols_leads = *dols_leads;
    if (dols_lags) c.dols_lags = *dols_lags;
    if (lm_order) c.lm_order = *lm_order;
    if (!bounds_table.empty()) c = parse_config(fmt::format("{{\"bounds_table\": \"{}\"}}", bounds_table), c);
    if (!output_dir.empty()) c.output_dir = output_dir;
    if (!format.empty()) c.format = output_format_from_string(format);
    if (jobs) c.jobs = *jobs;
    if (c.dependent.empty()) fail(ErrorCode::invalid_argument, "no dependent variable (--dependent)");
  }

  static std::optional<int> auto_or_int(const std::string& s, const char* flag) {
    if (s == "auto") return std::nullopt;
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::invalid_argument, fmt::format("{} expects an integer or auto, got '{}'", flag, s));
  }
};

int run_analysis(const AnalysisFlags& flags, StageSet stages) {
  const auto config = flags.resolve();
  const auto report = run_pipeline(config, stages);
  const auto files = render(report, config.format);
  write_rendered(files, config.output_dir);
  for (const auto& f : files) fmt::print("wrote {}/{}\n", config.output_dir, f.name);
  for (const auto& w : report.warnings) fmt::print(stderr, "warning: {}\n", w);
  return 0;
}

// Monte-Carlo and simulation options.
struct DgpFlags {
  std::string kind = "random_walk";
  int T = 100;
  std::uint64_t seed = 1;
  double drift = 0.0;
  double rho = 0.5;
  double sigma = 1.0;
  double alpha = -0.3;
  double c = 0.0;
  int extra = 0;
  std::string beta = "1";
  std::string delta;
  std::string x_drift;
  std::string x_start;
  double x_sigma = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--dgp", kind, "random_walk, ar1 or ecm")->check(CLI::IsMember({"random_walk", "ar1", "ecm"}));
    app->add_option("-T,--length", T, "series length");
    app->add_option("--seed", seed, "64-bit seed (replication r uses seed + r)");
    app->add_option("--drift", drift, "random-walk drift");
    app->add_option("--rho", rho, "AR(1) coefficient");
    app->add_option("--sigma", sigma, "shock standard deviation");
    app->add_option("--extra", extra, "independent extra columns x1.. (random_walk, ar1)");
    app->add_option("--alpha", alpha, "ECM adjustment speed");
    app->add_option("--intercept", c, "ECM long-run intercept");
    app->add_option("--beta", beta, "comma-separated long-run coefficients (ecm)");
    app->add_option("--delta", delta, "comma-separated impact coefficients (ecm)");
    app->add_option("--x-drift", x_drift, "comma-separated regressor drifts (ecm)");
    app->add_option("--x-start", x_start, "comma-separated regressor starting levels (ecm)");
    app->add_option("--x-sigma", x_sigma, "regressor shock standard deviation (ecm)");
  }

  [[nodiscard]] Dgp dgp() const {
    auto numbers = [](const std::string& s) {
      std::vector<double> v;
      for (const auto& item : split_list(s)) {
        try {
          v.push_back(std::stod(item));
        } catch (const std::exception&) {
          fail(ErrorCode::invalid_argument, fmt::format("'{}' is not a number", item));
        }
      }
      return v;
    };
    Dgp d;
    d.T = T;
    d.seed = seed;
    if (kind == "random_walk") {
      d.process = RandomWalk{drift, sigma, extra};
    } else if (kind == "ar1") {
      d.process = Ar1{rho, sigma, extra};
    } else {
      EcmSystem e;
      e.beta = numbers(beta);
      e.alpha = alpha;
      e.sigma = sigma;
      e.c = c;
      e.delta = numbers(delta);
      e.x_sigma = x_sigma;
      e.x_drift = numbers(x_drift);
      e.x_start = numbers(x_start);
      d.process = e;
    }
    return d;
  }
};

McProcedure mc_procedure(const std::string& test, Significance level, const AdfOptions& adf_opts, int max_lag) {
  if (test == "adf") {
    return [=](const TimeSeriesFrame& f) {
      const auto r = adf(f.column("y"), adf_opts);
      return McOutcome{r.statistic, r.rejects(level)};
    };
  }
  if (test == "pp") {
    return [=](const TimeSeriesFrame& f) {
      const auto r = pp(f.column("y"), adf_opts.deterministic);
      return McOutcome{r.statistic, r.rejects(level)};
    };
  }
  if (test == "dfgls") {
    return [=](const TimeSeriesFrame& f) {
      const auto r = dfgls(f.column("y"), adf_opts);
      return McOutcome{r.statistic, r.rejects(level)};
    };
  }
  if (test == "granger") {
    return [=](const TimeSeriesFrame& f) {
      const auto r = granger_pair(f.column("x1"), f.column("y"), max_lag, "x1", "y");
      return McOutcome{r.f_stat, r.rejects(level)};
    };
  }
  // bounds: y on every x column
  return [=](const TimeSeriesFrame& f) {
    ModelSpec spec;
    spec.dependent = "y";
    for (const auto& n : f.names()) {
      if (n != "y") spec.regressors.push_back(n);
    }
    spec.max_p = max_lag;
    spec.max_q = max_lag;
    const auto order = select_ardl_lags(f, spec);
    const auto b = bounds_test(fit_conditional_ecm(f, spec, order), BoundsTable::pesaran_case3);
    return McOutcome{b.f_stat, b.decision_at(level) == BoundsDecision::cointegrated};
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ardlkit: ARDL bounds cointegration pipeline and diagnostics"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    StageSet stages;
  };
  const Command analyses[] = {
      {"unitroot", "ADF, PP and DF-GLS tests on levels and first differences", StageSet{}.add(Stage::unit_root)},
      {"bounds", "ARDL lag selection and the bounds F test", StageSet{}.add(Stage::bounds)},
      {"ardl", "long-run coefficients and error-correction model", StageSet{}.add(Stage::ardl)},
      {"robust", "FMOLS, DOLS and CCR long-run estimates", StageSet{}.add(Stage::robustness)},
      {"granger", "pairwise Granger causality against the dependent variable", StageSet{}.add(Stage::causality)},
      {"diag", "residual diagnostics, CUSUM and CUSUM-SQ", StageSet{}.add(Stage::diagnostics)},
      {"pipeline", "every stage in order", StageSet::all()},
  };
  std::vector<AnalysisFlags> flags(std::size(analyses));
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(analyses); ++i) {
    auto* sub = app.add_subcommand(analyses[i].name, analyses[i].help);
    flags[i].attach(sub);
    subs.push_back(sub);
  }

  auto* mc = app.add_subcommand("mc", "Monte-Carlo rejection rate; CSV of replication,statistic,reject");
  DgpFlags mc_dgp;
  mc_dgp.attach(mc);
  std::string mc_test = "adf";
  int mc_reps = 1000;
  double mc_level = 0.05;
  int mc_jobs = 1;
  int mc_lag = 1;
  std::string mc_out = "-";
  std::string mc_det = "constant";
  mc->add_option("--test", mc_test, "adf, pp, dfgls, granger (x1 -> y) or bounds")
      ->check(CLI::IsMember({"adf", "pp", "dfgls", "granger", "bounds"}));
  mc->add_option("--reps", mc_reps, "replications (>= 100)");
  mc->add_option("--level", mc_level, "significance level");
  mc->add_option("--deterministic", mc_det, "constant or constant_trend");
  mc->add_option("--lag", mc_lag, "Granger lag, or maximum ARDL lag for bounds");
  mc->add_option("-j,--jobs", mc_jobs, "worker threads");
  mc->add_option("--output", mc_out, "CSV path, - for stdout");

  auto* sim = app.add_subcommand("simulate", "write a seeded synthetic dataset as CSV");
  DgpFlags sim_dgp;
  sim_dgp.attach(sim);
  std::string sim_names;
  bool sim_exp = false;
  int sim_start = 1;
  std::string sim_out = "-";
  sim->add_option("--names", sim_names, "comma-separated column names replacing y,x1,..");
  sim->add_flag("--exp", sim_exp, "exponentiate every column (positive levels for log analysis)");
  sim->add_option("--start-year", sim_start, "first year of the index");
  sim->add_option("--output", sim_out, "CSV path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) return run_analysis(flags[i], analyses[i].stages);
    }
    if (mc->parsed()) {
      const auto level = significance_from_alpha(mc_level);
      AdfOptions opts;
      opts.deterministic = mc_det == "constant_trend" ? Deterministic::constant_trend : Deterministic::constant;
      const auto result = monte_carlo(mc_procedure(mc_test, level, opts, mc_lag), mc_dgp.dgp(), mc_reps, mc_jobs);
      write_output(mc_out, mc_csv(result));
      fmt::print(stderr, "rejection rate {} ({} of {}, {} failed)\n", result.rate, result.rejections,
                 mc_reps - result.failures, result.failures);
      return 0;
    }
    if (sim->parsed()) {
      const auto frame = generate(sim_dgp.dgp());
      auto names = sim_names.empty() ? frame.names() : split_list(sim_names);
      if (names.size() != frame.names().size()) {
        fail(ErrorCode::invalid_argument,
             fmt::format("--names lists {} columns, the DGP produces {}", names.size(), frame.names().size()));
      }
      std::vector<int> years;
      for (int y : frame.years()) years.push_back(y - 1 + sim_start);
      std::vector<std::vector<double>> cols;
      for (const auto& n : frame.names()) {
        const auto c = frame.column(n);
        std::vector<double> v(c.begin(), c.end());
        if (sim_exp) {
          for (double& x : v) x = std::exp(x);
        }
        cols.push_back(std::move(v));
      }
      write_output(sim_out, to_csv(TimeSeriesFrame(std::move(years), std::move(names), std::move(cols))));
      return 0;
    }
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return exit_code(category(e.code()));
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 3;
  }
  return 1;
}

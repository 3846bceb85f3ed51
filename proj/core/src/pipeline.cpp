#include "ardlkit/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ardlkit/error.hpp"
#include "ardlkit/parallel.hpp"

namespace ardlkit {
namespace {

using json = nlohmann::ordered_json;

template <class F>
auto in_stage(std::string_view stage, std::string_view variable, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    const auto where = variable.empty() ? fmt::format("{} stage", stage)
                                        : fmt::format("{} stage ({})", stage, variable);
    throw Error(e.code(), fmt::format("{}: {}", where, e.what()));
  }
}

[[noreturn]] void bad_key(std::string_view key, std::string_view why) {
  fail(ErrorCode::invalid_argument, fmt::format("config key '{}': {}", key, why));
}

int int_value(const json& v, std::string_view key) {
  if (!v.is_number_integer()) bad_key(key, "expected an integer");
  return v.get<int>();
}

std::optional<int> int_or_auto(const json& v, std::string_view key) {
  if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_integer()) bad_key(key, "expected an integer or \"auto\"");
  return v.get<int>();
}

std::string string_value(const json& v, std::string_view key) {
  if (!v.is_string()) bad_key(key, "expected a string");
  return v.get<std::string>();
}

BoundsTable bounds_table_from_string(std::string_view s, std::string_view key) {
  if (s == "k5") return BoundsTable::reference_k5;
  if (s == "pesaran") return BoundsTable::pesaran_case3;
  bad_key(key, "expected \"k5\" or \"pesaran\"");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<Estimate> tabulate(const ArdlFit& fit) {
  std::vector<Estimate> out;
  for (std::size_t i = 0; i < fit.column_names.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    out.push_back({fit.column_names[i], fit.regression.coef(idx), fit.regression.std_errors(idx)});
  }
  return out;
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::markdown: return "markdown";
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
  }
  return "markdown";
}

OutputFormat output_format_from_string(std::string_view name) {
  if (name == "markdown" || name == "md") return OutputFormat::markdown;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  fail(ErrorCode::invalid_argument, fmt::format("unknown output format '{}'", name));
}

ModelSpec PipelineConfig::model_spec() const {
  ModelSpec spec;
  const std::string prefix = log_transform ? "L" : "";
  spec.dependent = prefix + dependent;
  for (const auto& r : regressors) spec.regressors.push_back(prefix + r);
  spec.max_p = max_p;
  spec.max_q = max_q;
  spec.deterministic = deterministic;
  spec.level = level;
  return spec;
}

PipelineConfig parse_config(std::string_view text, PipelineConfig c) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::invalid_argument, fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) fail(ErrorCode::invalid_argument, "config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "data") {
      c.data = string_value(v, key);
    } else if (key == "dependent") {
      c.dependent = string_value(v, key);
    } else if (key == "regressors") {
      if (!v.is_array()) bad_key(key, "expected an array of names");
      c.regressors.clear();
      for (const auto& r : v) c.regressors.push_back(string_value(r, key));
    } else if (key == "log_transform") {
      if (!v.is_boolean()) bad_key(key, "expected true or false");
      c.log_transform = v.get<bool>();
    } else if (key == "max_p") {
      c.max_p = int_value(v, key);
    } else if (key == "max_q") {
      c.max_q = int_value(v, key);
    } else if (key == "criterion") {
      c.criterion = info_criterion_from_string(string_value(v, key));
    } else if (key == "deterministic") {
      const auto s = string_value(v, key);
      if (s == "constant") {
        c.deterministic = Deterministic::constant;
      } else if (s == "constant_trend") {
        c.deterministic = Deterministic::constant_trend;
      } else {
        bad_key(key, "expected \"constant\" or \"constant_trend\"");
      }
    } else if (key == "level") {
      if (!v.is_number()) bad_key(key, "expected a number");
      c.level = significance_from_alpha(v.get<double>());
    } else if (key == "granger_lag") {
      c.granger_lag = int_or_auto(v, key);
    } else if (key == "bandwidth") {
      c.bandwidth = int_or_auto(v, key);
    } else if (key == "dols_leads") {
      c.dols_leads = int_value(v, key);
    } else if (key == "dols_lags") {
      c.dols_lags = int_value(v, key);
    } else if (key == "lm_order") {
      c.lm_order = int_value(v, key);
    } else if (key == "bounds_table") {
      c.bounds_table = bounds_table_from_string(string_value(v, key), key);
    } else if (key == "output_dir") {
      c.output_dir = string_value(v, key);
    } else if (key == "format") {
      c.format = output_format_from_string(string_value(v, key));
    } else if (key == "jobs") {
      c.jobs = int_value(v, key);
    } else {
      fail(ErrorCode::invalid_argument, fmt::format("unknown config key '{}'", key));
    }
  }
  return c;
}

std::string config_to_json(const PipelineConfig& c) {
  json j;
  j["data"] = c.data;
  j["dependent"] = c.dependent;
  j["regressors"] = c.regressors;
  j["log_transform"] = c.log_transform;
  j["max_p"] = c.max_p;
  j["max_q"] = c.max_q;
  j["criterion"] = std::string(to_string(c.criterion));
  j["deterministic"] = std::string(to_string(c.deterministic));
  j["level"] = alpha(c.level);
  j["granger_lag"] = c.granger_lag ? json(*c.granger_lag) : json("auto");
  j["bandwidth"] = c.bandwidth ? json(*c.bandwidth) : json("auto");
  j["dols_leads"] = c.dols_leads;
  j["dols_lags"] = c.dols_lags;
  j["lm_order"] = c.lm_order;
  j["bounds_table"] = c.bounds_table == BoundsTable::reference_k5 ? "k5" : "pesaran";
  j["output_dir"] = c.output_dir;
  j["format"] = std::string(to_string(c.format));
  j["jobs"] = c.jobs;
  return j.dump(2) + "\n";
}

std::vector<SummaryRow> summary_statistics(const TimeSeriesFrame& frame, std::span<const std::string> names) {
  std::vector<SummaryRow> rows;
  for (const auto& name : names) {
    const auto x = frame.column(name);
    const auto n = static_cast<double>(x.size());
    SummaryRow r;
    r.variable = name;
    r.nobs = x.size();
    double sum = 0.0;
    for (double v : x) sum += v;
    r.mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
      const double d = v - r.mean;
      m2 += d * d;
      m3 += d * d * d;
      m4 += d * d * d * d;
    }
    r.std_dev = x.size() > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
    m2 /= n;
    m3 /= n;
    m4 /= n;
    r.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    r.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
    r.median = median({x.begin(), x.end()});
    r.max = *std::max_element(x.begin(), x.end());
    r.min = *std::min_element(x.begin(), x.end());
    rows.push_back(r);
  }
  return rows;
}

PipelineReport run_pipeline(const TimeSeriesFrame& raw, const PipelineConfig& config, StageSet stages) {
  if (config.jobs < 1) fail(ErrorCode::invalid_argument, "jobs must be >= 1");
  if (config.lm_order < 1) fail(ErrorCode::invalid_argument, "lm_order must be >= 1");
  if (config.regressors.empty()) fail(ErrorCode::invalid_argument, "no regressors configured");

  std::vector<std::string> raw_names{config.dependent};
  raw_names.insert(raw_names.end(), config.regressors.begin(), config.regressors.end());
  const TimeSeriesFrame frame = in_stage("transform", "", [&] {
    for (const auto& n : raw_names) (void)raw.column(n);
    return config.log_transform ? natural_log(raw, raw_names) : raw;
  });
  const ModelSpec spec = config.model_spec();
  spec.validate(frame);
  std::vector<std::string> variables{spec.dependent};
  variables.insert(variables.end(), spec.regressors.begin(), spec.regressors.end());

  PipelineReport report;
  report.dependent = spec.dependent;
  report.regressors = spec.regressors;
  report.first_year = frame.years().front();
  report.last_year = frame.years().back();
  report.nobs = frame.size();
  report.level = config.level;

  if (stages.has(Stage::summary)) report.summary = summary_statistics(frame, variables);

  if (stages.has(Stage::unit_root)) {
    std::vector<UnitRootRow> rows(variables.size());
    AdfOptions opts;
    opts.deterministic = config.deterministic;
    opts.criterion = config.criterion;
    parallel_for(variables.size(), config.jobs, [&](std::size_t i) {
      const auto& v = variables[i];
      in_stage("unit_root", v, [&] {
        const auto level = frame.column(v);
        const auto diff = difference(level);
        UnitRootRow& r = rows[i];
        r.variable = v;
        r.adf_level = adf(level, opts, v);
        r.adf_diff = adf(diff, opts, "D." + v);
        r.pp_level = pp(level, config.deterministic, config.kernel(), v);
        r.pp_diff = pp(diff, config.deterministic, config.kernel(), "D." + v);
        r.dfgls_level = dfgls(level, opts, v);
        r.dfgls_diff = dfgls(diff, opts, "D." + v);
        return 0;
      });
    });
    for (auto& r : rows) {
      r.order = in_stage("unit_root", r.variable,
                         [&] { return integration_order(r.adf_level, r.adf_diff, config.level).order; });
    }
    report.unit_root = std::move(rows);
  }

  const bool need_fit = stages.has(Stage::bounds) || stages.has(Stage::ardl) || stages.has(Stage::robustness) ||
                        stages.has(Stage::diagnostics);
  std::optional<ArdlFit> fit;
  std::optional<BoundsResult> bounds;
  if (need_fit) {
    fit = in_stage("ardl", "", [&] {
      const auto order = select_ardl_lags(frame, spec, config.criterion, config.jobs);
      return fit_conditional_ecm(frame, spec, order);
    });
    bounds = in_stage("bounds", "", [&] { return bounds_test(*fit, config.bounds_table); });
    if (bounds->table != config.bounds_table) {
      report.warnings.push_back(fmt::format("bounds: reference bounds cover k = 5 only, got k = {}; Pesaran case III bounds used",
                                            bounds->k));
    }
  }
  if (stages.has(Stage::bounds)) report.bounds = bounds;

  if (stages.has(Stage::ardl)) {
    report.ardl = in_stage("ardl", "", [&] {
      ArdlSection s;
      s.order = fit->order;
      s.criterion = config.criterion;
      s.conditional = tabulate(*fit);
      s.conditional_r2 = fit->regression.r2;
      s.conditional_nobs = fit->regression.nobs;
      const auto lr = long_run_coefficients(*fit);
      s.ecm = fit_ecm(frame, spec, fit->order, lr);
      return s;
    });
    if (report.ardl->ecm.convergence_warning) {
      report.warnings.push_back(
          fmt::format("ardl: ECT coefficient {} lies outside (-2, 0); no error correction", report.ardl->ecm.ect.coef));
    }
  }

  if (stages.has(Stage::robustness)) {
    RobustnessSection s;
    s.estimates.resize(3);
    const auto kernel = config.kernel();
    parallel_for(3, config.jobs, [&](std::size_t i) {
      in_stage("robustness", i == 0 ? "FMOLS" : i == 1 ? "DOLS" : "CCR", [&] {
        if (i == 0) s.estimates[0] = fmols(frame, spec, kernel);
        if (i == 1) s.estimates[1] = dols(frame, spec, config.dols_leads, config.dols_lags, kernel);
        if (i == 2) s.estimates[2] = ccr(frame, spec, kernel);
        return 0;
      });
    });
    const auto decision = bounds->decision_at(config.level);
    if (decision != BoundsDecision::cointegrated) {
      s.warning = fmt::format(
          "bounds test is {} at {}; cointegrating-regression estimates lack their cointegration precondition",
          to_string(decision), label(config.level));
      report.warnings.push_back("robustness: " + *s.warning);
    }
    report.robustness = std::move(s);
  }

  if (stages.has(Stage::causality)) {
    CausalitySection s;
    s.rows = in_stage("causality", "", [&] {
      return causality_matrix(frame, spec.regressors, spec.dependent, config.granger_lag, config.jobs);
    });
    for (std::size_t i = 0; i < spec.regressors.size(); ++i) {
      s.directions.push_back(classify(s.rows[2 * i], s.rows[2 * i + 1], config.level));
    }
    for (const auto& r : s.rows) {
      if (r.error) report.warnings.push_back(fmt::format("causality: {} -> {}: {}", r.cause, r.effect, *r.error));
    }
    report.causality = std::move(s);
  }

  if (stages.has(Stage::diagnostics)) {
    report.diagnostics = in_stage("diagnostics", "", [&] {
      DiagnosticsSection s;
      s.tests = diagnose(fit->regression, fit->design, config.lm_order, config.level);
      s.cusum = cusum(fit->response, fit->design, config.level);
      s.cusum_sq = cusum_sq(fit->response, fit->design, config.level);
      return s;
    });
  }
  return report;
}

PipelineReport run_pipeline(const PipelineConfig& config, StageSet stages) {
  if (config.data.empty()) fail(ErrorCode::invalid_argument, "no data file configured");
  const auto frame = in_stage("load", config.data, [&] { return load_csv_file(config.data); });
  return run_pipeline(frame, config, stages);
}

}  // namespace ardlkit

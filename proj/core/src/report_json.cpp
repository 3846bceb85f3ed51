#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ardlkit/error.hpp"
#include "ardlkit/pipeline.hpp"

namespace ardlkit {
namespace {

using json = nlohmann::ordered_json;

// JSON has no non-finite numbers; they travel as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(ErrorCode::invalid_argument, fmt::format("expected a number, got {}", j.dump()));
}

template <class E>
json name(E e) {
  return std::string(to_string(e));
}

template <class E>
E parse(const json& j, std::initializer_list<E> options) {
  const auto s = j.get<std::string>();
  for (E e : options) {
    if (to_string(e) == s) return e;
  }
  fail(ErrorCode::invalid_argument, fmt::format("unrecognised value '{}'", s));
}

json level_json(Significance s) { return alpha(s); }
Significance level_from(const json& j) { return significance_from_alpha(j.get<double>()); }

json to_j(const UnitRootReport& r) {
  json j;
  j["variable"] = r.variable;
  j["test"] = name(r.test);
  j["deterministic"] = name(r.deterministic);
  j["lag_or_bandwidth"] = r.lag_or_bandwidth;
  j["statistic"] = num(r.statistic);
  j["critical"] = {{"1%", num(r.critical.pct1)}, {"5%", num(r.critical.pct5)}, {"10%", num(r.critical.pct10)}};
  j["nobs"] = r.nobs;
  return j;
}

UnitRootReport unit_root_from(const json& j) {
  UnitRootReport r;
  r.variable = j.at("variable").get<std::string>();
  r.test = parse(j.at("test"), {UnitRootTest::adf, UnitRootTest::pp, UnitRootTest::dfgls});
  r.deterministic = parse(j.at("deterministic"), {Deterministic::constant, Deterministic::constant_trend});
  r.lag_or_bandwidth = j.at("lag_or_bandwidth").get<int>();
  r.statistic = num(j.at("statistic"));
  r.critical.pct1 = num(j.at("critical").at("1%"));
  r.critical.pct5 = num(j.at("critical").at("5%"));
  r.critical.pct10 = num(j.at("critical").at("10%"));
  r.nobs = j.at("nobs").get<Eigen::Index>();
  return r;
}

json to_j(const Estimate& e) { return {{"name", e.name}, {"coef", num(e.coef)}, {"std_error", num(e.std_error)}}; }

Estimate estimate_from(const json& j) {
  return {j.at("name").get<std::string>(), num(j.at("coef")), num(j.at("std_error"))};
}

json to_j(const std::vector<Estimate>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(to_j(e));
  return a;
}

std::vector<Estimate> estimates_from(const json& j) {
  std::vector<Estimate> v;
  for (const auto& e : j) v.push_back(estimate_from(e));
  return v;
}

json to_j(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> doubles_from(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(num(x));
  return v;
}

json to_j(const TestStatistic& t) { return {{"statistic", num(t.statistic)}, {"p_value", num(t.p_value)}}; }
TestStatistic test_from(const json& j) { return {num(j.at("statistic")), num(j.at("p_value"))}; }

json to_j(const StabilityPath& p) {
  json j;
  j["statistic"] = name(p.statistic);
  j["t"] = p.t_index;
  j["values"] = to_j(p.values);
  j["lower"] = to_j(p.lower);
  j["upper"] = to_j(p.upper);
  j["stable"] = p.stable;
  return j;
}

StabilityPath path_from(const json& j) {
  StabilityPath p;
  p.statistic = parse(j.at("statistic"), {StabilityStatistic::cusum, StabilityStatistic::cusum_sq});
  p.t_index = j.at("t").get<std::vector<int>>();
  p.values = doubles_from(j.at("values"));
  p.lower = doubles_from(j.at("lower"));
  p.upper = doubles_from(j.at("upper"));
  p.stable = j.at("stable").get<bool>();
  return p;
}

json to_j(const BoundsResult& b) {
  json j;
  j["f_stat"] = num(b.f_stat);
  j["p_value"] = num(b.p_value);
  j["k"] = b.k;
  j["table"] = name(b.table);
  json rows = json::array();
  for (std::size_t i = 0; i < kBoundsLevels.size(); ++i) {
    rows.push_back({{"level", level_json(kBoundsLevels[i])},
                    {"i0", num(b.bounds[i].i0)},
                    {"i1", num(b.bounds[i].i1)},
                    {"decision", name(b.decision[i])}});
  }
  j["bounds"] = rows;
  return j;
}

BoundsResult bounds_from(const json& j) {
  BoundsResult b;
  b.f_stat = num(j.at("f_stat"));
  b.p_value = num(j.at("p_value"));
  b.k = j.at("k").get<int>();
  b.table = parse(j.at("table"), {BoundsTable::reference_k5, BoundsTable::pesaran_case3});
  const auto& rows = j.at("bounds");
  if (rows.size() != kBoundsLevels.size()) fail(ErrorCode::invalid_argument, "bounds must list four levels");
  for (std::size_t i = 0; i < kBoundsLevels.size(); ++i) {
    b.bounds[i] = {num(rows[i].at("i0")), num(rows[i].at("i1"))};
    b.decision[i] = parse(rows[i].at("decision"), {BoundsDecision::cointegrated, BoundsDecision::inconclusive,
                                                   BoundsDecision::not_cointegrated});
  }
  return b;
}

json to_j(const CointEstimate& e) {
  json j;
  j["method"] = name(e.method);
  json coefs = json::array();
  for (const auto& c : e.coefficients) {
    coefs.push_back({{"name", c.name}, {"coef", num(c.coef)}, {"std_error", num(c.std_error)}, {"t_stat", num(c.t_stat)}});
  }
  j["coefficients"] = coefs;
  j["r2"] = num(e.r2);
  j["bandwidth"] = e.bandwidth;
  j["leads"] = e.leads;
  j["lags"] = e.lags;
  j["long_run_variance"] = num(e.long_run_variance);
  j["nobs"] = e.nobs;
  return j;
}

CointEstimate coint_from(const json& j) {
  CointEstimate e;
  e.method = parse(j.at("method"), {CointMethod::ols, CointMethod::fmols, CointMethod::dols, CointMethod::ccr});
  for (const auto& c : j.at("coefficients")) {
    e.coefficients.push_back(
        {c.at("name").get<std::string>(), num(c.at("coef")), num(c.at("std_error")), num(c.at("t_stat"))});
  }
  e.r2 = num(j.at("r2"));
  e.bandwidth = j.at("bandwidth").get<int>();
  e.leads = j.at("leads").get<int>();
  e.lags = j.at("lags").get<int>();
  e.long_run_variance = num(j.at("long_run_variance"));
  e.nobs = j.at("nobs").get<Eigen::Index>();
  return e;
}

json to_j(const CausalityReport& r) {
  json j;
  j["cause"] = r.cause;
  j["effect"] = r.effect;
  j["lag"] = r.lag;
  j["nobs"] = r.nobs;
  j["f_stat"] = num(r.f_stat);
  j["p_value"] = num(r.p_value);
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  return j;
}

CausalityReport causality_from(const json& j) {
  CausalityReport r;
  r.cause = j.at("cause").get<std::string>();
  r.effect = j.at("effect").get<std::string>();
  r.lag = j.at("lag").get<int>();
  r.nobs = j.at("nobs").get<Eigen::Index>();
  r.f_stat = num(j.at("f_stat"));
  r.p_value = num(j.at("p_value"));
  if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  return r;
}

}  // namespace

std::string report_to_json(const PipelineReport& r) {
  json j;
  j["dependent"] = r.dependent;
  j["regressors"] = r.regressors;
  j["first_year"] = r.first_year;
  j["last_year"] = r.last_year;
  j["nobs"] = r.nobs;
  j["level"] = level_json(r.level);

  if (r.summary) {
    json rows = json::array();
    for (const auto& s : *r.summary) {
      rows.push_back({{"variable", s.variable},
                      {"mean", num(s.mean)},
                      {"median", num(s.median)},
                      {"max", num(s.max)},
                      {"min", num(s.min)},
                      {"std_dev", num(s.std_dev)},
                      {"skewness", num(s.skewness)},
                      {"kurtosis", num(s.kurtosis)},
                      {"nobs", s.nobs}});
    }
    j["summary"] = rows;
  }
  if (r.unit_root) {
    json rows = json::array();
    for (const auto& u : *r.unit_root) {
      rows.push_back({{"variable", u.variable},
                      {"adf_level", to_j(u.adf_level)},
                      {"adf_diff", to_j(u.adf_diff)},
                      {"pp_level", to_j(u.pp_level)},
                      {"pp_diff", to_j(u.pp_diff)},
                      {"dfgls_level", to_j(u.dfgls_level)},
                      {"dfgls_diff", to_j(u.dfgls_diff)},
                      {"order", name(u.order)}});
    }
    j["unit_root"] = rows;
  }
  if (r.bounds) j["bounds"] = to_j(*r.bounds);
  if (r.ardl) {
    const auto& a = *r.ardl;
    json s;
    s["order"] = {{"p", a.order.p}, {"q", a.order.q}};
    s["criterion"] = name(a.criterion);
    s["conditional"] = to_j(a.conditional);
    s["conditional_r2"] = num(a.conditional_r2);
    s["conditional_nobs"] = a.conditional_nobs;
    s["long_run"] = to_j(a.ecm.long_run);
    s["short_run"] = to_j(a.ecm.short_run);
    s["ect"] = to_j(a.ecm.ect);
    s["ecm_r2"] = num(a.ecm.r2);
    s["ect_intercept"] = num(a.ecm.ect_intercept);
    s["ecm_nobs"] = a.ecm.nobs;
    s["convergence_warning"] = a.ecm.convergence_warning;
    j["ardl"] = s;
  }
  if (r.robustness) {
    json s;
    json est = json::array();
    for (const auto& e : r.robustness->estimates) est.push_back(to_j(e));
    s["estimates"] = est;
    s["warning"] = r.robustness->warning ? json(*r.robustness->warning) : json(nullptr);
    j["robustness"] = s;
  }
  if (r.causality) {
    json rows = json::array();
    for (const auto& c : r.causality->rows) rows.push_back(to_j(c));
    json dirs = json::array();
    for (auto d : r.causality->directions) dirs.push_back(name(d));
    j["causality"] = {{"rows", rows}, {"directions", dirs}};
  }
  if (r.diagnostics) {
    const auto& d = *r.diagnostics;
    json s;
    s["jb"] = to_j(d.tests.jb);
    s["lm"] = to_j(d.tests.lm);
    s["lm_order"] = d.tests.lm_order;
    s["bpg"] = to_j(d.tests.bpg);
    s["level"] = level_json(d.tests.level);
    s["cusum"] = to_j(d.cusum);
    s["cusum_sq"] = to_j(d.cusum_sq);
    j["diagnostics"] = s;
  }
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

PipelineReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::invalid_argument, fmt::format("report is not valid JSON: {}", e.what()));
  }
  try {
    PipelineReport r;
    r.dependent = j.at("dependent").get<std::string>();
    r.regressors = j.at("regressors").get<std::vector<std::string>>();
    r.first_year = j.at("first_year").get<int>();
    r.last_year = j.at("last_year").get<int>();
    r.nobs = j.at("nobs").get<std::size_t>();
    r.level = level_from(j.at("level"));
    if (j.contains("summary")) {
      std::vector<SummaryRow> rows;
      for (const auto& s : j["summary"]) {
        rows.push_back({s.at("variable").get<std::string>(), num(s.at("mean")), num(s.at("median")),
                        num(s.at("max")), num(s.at("min")), num(s.at("std_dev")), num(s.at("skewness")),
                        num(s.at("kurtosis")), s.at("nobs").get<std::size_t>()});
      }
      r.summary = std::move(rows);
    }
    if (j.contains("unit_root")) {
      std::vector<UnitRootRow> rows;
      for (const auto& u : j["unit_root"]) {
        UnitRootRow row;
        row.variable = u.at("variable").get<std::string>();
        row.adf_level = unit_root_from(u.at("adf_level"));
        row.adf_diff = unit_root_from(u.at("adf_diff"));
        row.pp_level = unit_root_from(u.at("pp_level"));
        row.pp_diff = unit_root_from(u.at("pp_diff"));
        row.dfgls_level = unit_root_from(u.at("dfgls_level"));
        row.dfgls_diff = unit_root_from(u.at("dfgls_diff"));
        row.order = parse(u.at("order"), {IntegrationOrder::I0, IntegrationOrder::I1});
        rows.push_back(std::move(row));
      }
      r.unit_root = std::move(rows);
    }
    if (j.contains("bounds")) r.bounds = bounds_from(j["bounds"]);
    if (j.contains("ardl")) {
      const auto& s = j["ardl"];
      ArdlSection a;
      a.order.p = s.at("order").at("p").get<int>();
      a.order.q = s.at("order").at("q").get<std::vector<int>>();
      a.criterion = info_criterion_from_string(s.at("criterion").get<std::string>());
      a.conditional = estimates_from(s.at("conditional"));
      a.conditional_r2 = num(s.at("conditional_r2"));
      a.conditional_nobs = s.at("conditional_nobs").get<Eigen::Index>();
      a.ecm.long_run = estimates_from(s.at("long_run"));
      a.ecm.short_run = estimates_from(s.at("short_run"));
      a.ecm.ect = estimate_from(s.at("ect"));
      a.ecm.r2 = num(s.at("ecm_r2"));
      a.ecm.ect_intercept = num(s.at("ect_intercept"));
      a.ecm.nobs = s.at("ecm_nobs").get<Eigen::Index>();
      a.ecm.convergence_warning = s.at("convergence_warning").get<bool>();
      r.ardl = std::move(a);
    }
    if (j.contains("robustness")) {
      RobustnessSection s;
      for (const auto& e : j["robustness"].at("estimates")) s.estimates.push_back(coint_from(e));
      if (!j["robustness"].at("warning").is_null()) s.warning = j["robustness"]["warning"].get<std::string>();
      r.robustness = std::move(s);
    }
    if (j.contains("causality")) {
      CausalitySection s;
      for (const auto& c : j["causality"].at("rows")) s.rows.push_back(causality_from(c));
      for (const auto& d : j["causality"].at("directions")) {
        s.directions.push_back(parse(d, {CausalDirection::none, CausalDirection::to_dependent,
                                         CausalDirection::from_dependent, CausalDirection::bidirectional}));
      }
      r.causality = std::move(s);
    }
    if (j.contains("diagnostics")) {
      const auto& s = j["diagnostics"];
      DiagnosticsSection d;
      d.tests.jb = test_from(s.at("jb"));
      d.tests.lm = test_from(s.at("lm"));
      d.tests.lm_order = s.at("lm_order").get<int>();
      d.tests.bpg = test_from(s.at("bpg"));
      d.tests.level = level_from(s.at("level"));
      d.cusum = path_from(s.at("cusum"));
      d.cusum_sq = path_from(s.at("cusum_sq"));
      r.diagnostics = std::move(d);
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_argument, fmt::format("malformed report JSON: {}", e.what()));
  }
}

}  // namespace ardlkit

#include "ardlkit/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "ardlkit/distributions.hpp"
#include "ardlkit/error.hpp"

namespace ardlkit {
namespace {

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> cells) {
    cells.resize(header_.size());
    rows_.push_back(std::move(cells));
  }

  [[nodiscard]] std::string markdown() const {
    std::string out = line(header_);
    out += "|";
    for (std::size_t i = 0; i < header_.size(); ++i) out += i == 0 ? " :--- |" : " ---: |";
    out += "\n";
    for (const auto& r : rows_) out += line(r);
    return out;
  }

  [[nodiscard]] std::string csv() const {
    std::string out = csv_line(header_);
    for (const auto& r : rows_) out += csv_line(r);
    return out;
  }

 private:
  static std::string line(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) out += " " + c + " |";
    return out + "\n";
  }
  static std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ",";
      const auto& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        out += q + "\"";
      } else {
        out += c;
      }
    }
    return out + "\n";
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string full(double v) { return fmt::format("{}", v); }

double two_sided_p(double coef, double se) {
  if (!(se > 0.0)) return coef == 0.0 ? 1.0 : 0.0;
  return tail_probability(Distribution::normal, coef / se, {}, Tail::two_sided);
}

std::string unit_root_cell(const UnitRootReport& r) { return fmt::format("{:.3f}{}", r.statistic, r.stars()); }

const Estimate* find(const std::vector<Estimate>& v, const std::string& name) {
  for (const auto& e : v) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::string heading(const char* title) { return fmt::format("### {}\n\n", title); }

// ---- summary ----

std::vector<RenderedFile> summary_files(const PipelineReport& r, OutputFormat f) {
  const auto& rows = *r.summary;
  if (f == OutputFormat::csv) {
    Table t({"variable", "mean", "median", "max", "min", "std_dev", "skewness", "kurtosis", "nobs"});
    for (const auto& s : rows) {
      t.row({s.variable, full(s.mean), full(s.median), full(s.max), full(s.min), full(s.std_dev), full(s.skewness),
             full(s.kurtosis), fmt::format("{}", s.nobs)});
    }
    return {{"summary.csv", t.csv()}};
  }
  std::vector<std::string> header{"Statistic"};
  for (const auto& s : rows) header.push_back(s.variable);
  Table t(header);
  auto add = [&](const char* label, auto get) {
    std::vector<std::string> cells{label};
    for (const auto& s : rows) cells.push_back(get(s));
    t.row(cells);
  };
  add("Mean", [](const SummaryRow& s) { return fmt::format("{:.4f}", s.mean); });
  add("Median", [](const SummaryRow& s) { return fmt::format("{:.4f}", s.median); });
  add("Maximum", [](const SummaryRow& s) { return fmt::format("{:.4f}", s.max); });
  add("Minimum", [](const SummaryRow& s) { return fmt::format("{:.4f}", s.min); });
  add("Std. Dev.", [](const SummaryRow& s) { return fmt::format("{:.4f}", s.std_dev); });
  add("Skewness", [](const SummaryRow& s) { return fmt::format("{:.4f}", s.skewness); });
  add("Kurtosis", [](const SummaryRow& s) { return fmt::format("{:.4f}", s.kurtosis); });
  add("Observations", [](const SummaryRow& s) { return fmt::format("{}", s.nobs); });
  return {{"summary.md", heading("Summary statistics") + t.markdown()}};
}

// ---- unit roots ----

std::vector<RenderedFile> unit_root_files(const PipelineReport& r, OutputFormat f) {
  const auto& rows = *r.unit_root;
  if (f == OutputFormat::csv) {
    Table t({"variable", "test", "form", "deterministic", "lag_or_bandwidth", "statistic", "cv_1pct", "cv_5pct",
             "cv_10pct", "nobs", "stars", "decision"});
    for (const auto& u : rows) {
      const std::pair<const char*, const UnitRootReport*> cells[] = {
          {"level", &u.adf_level},  {"diff", &u.adf_diff},     {"level", &u.pp_level},
          {"diff", &u.pp_diff},     {"level", &u.dfgls_level}, {"diff", &u.dfgls_diff}};
      for (const auto& [form, rep] : cells) {
        t.row({u.variable, std::string(to_string(rep->test)), form, std::string(to_string(rep->deterministic)),
               fmt::format("{}", rep->lag_or_bandwidth), full(rep->statistic), full(rep->critical.pct1),
               full(rep->critical.pct5), full(rep->critical.pct10), fmt::format("{}", rep->nobs), rep->stars(),
               std::string(to_string(u.order))});
      }
    }
    return {{"unit_root.csv", t.csv()}};
  }
  Table t({"Variables", "ADF I(0)", "ADF I(1)", "P-P I(0)", "P-P I(1)", "DF-GLS I(0)", "DF-GLS I(1)", "Decision"});
  for (const auto& u : rows) {
    t.row({u.variable, unit_root_cell(u.adf_level), unit_root_cell(u.adf_diff), unit_root_cell(u.pp_level),
           unit_root_cell(u.pp_diff), unit_root_cell(u.dfgls_level), unit_root_cell(u.dfgls_diff),
           std::string(to_string(u.order))});
  }
  std::string det = rows.empty() ? "constant" : std::string(to_string(rows.front().adf_level.deterministic));
  std::string out = heading("Unit root tests") + t.markdown();
  out += fmt::format(
      "\nI(0): level, I(1): first difference. Deterministic terms: {}. ***, **, * reject the unit root at 1%, 5%, "
      "10%. Decision from the ADF pair at {}.\n",
      det, label(r.level));
  return {{"unit_root.md", out}};
}

// ---- bounds ----

std::vector<RenderedFile> bounds_files(const PipelineReport& r, OutputFormat f) {
  const auto& b = *r.bounds;
  if (f == OutputFormat::csv) {
    Table t({"level", "i0", "i1", "f_stat", "k", "decision", "table"});
    for (std::size_t i = 0; i < kBoundsLevels.size(); ++i) {
      t.row({std::string(label(kBoundsLevels[i])), full(b.bounds[i].i0), full(b.bounds[i].i1), full(b.f_stat),
             fmt::format("{}", b.k), std::string(to_string(b.decision[i])), std::string(to_string(b.table))});
    }
    return {{"bounds.csv", t.csv()}};
  }
  Table head({"Test Statistics", "Value", "K"});
  head.row({"F statistics", fmt::format("{:.4f}", b.f_stat), fmt::format("{}", b.k)});
  Table grid({"Critical Bounds", "10%", "5%", "2.5%", "1%"});
  std::vector<std::string> i0{"I(0)"}, i1{"I(1)"}, dec{"Decision"};
  for (std::size_t i = 0; i < kBoundsLevels.size(); ++i) {
    i0.push_back(fmt::format("{:.2f}", b.bounds[i].i0));
    i1.push_back(fmt::format("{:.2f}", b.bounds[i].i1));
    dec.push_back(std::string(to_string(b.decision[i])));
  }
  grid.row(i0);
  grid.row(i1);
  grid.row(dec);
  std::string out = heading("ARDL bounds test") + head.markdown() + "\n" + grid.markdown();
  out += fmt::format("\nBounds table: {}. Cointegrated when F exceeds I(1), not cointegrated below I(0).\n",
                     b.table == BoundsTable::reference_k5 ? "k = 5 reference bounds" : "Pesaran-Shin-Smith case III");
  return {{"bounds.md", out}};
}

// ---- ARDL / ECM ----

std::vector<RenderedFile> ardl_files(const PipelineReport& r, OutputFormat f) {
  const auto& a = *r.ardl;
  const auto& e = a.ecm;
  if (f == OutputFormat::csv) {
    Table t({"block", "name", "coef", "std_error"});
    for (const auto& x : e.long_run) t.row({"long_run", x.name, full(x.coef), full(x.std_error)});
    for (const auto& x : e.short_run) t.row({"short_run", x.name, full(x.coef), full(x.std_error)});
    t.row({"ect", e.ect.name, full(e.ect.coef), full(e.ect.std_error)});
    for (const auto& x : a.conditional) t.row({"conditional", x.name, full(x.coef), full(x.std_error)});
    t.row({"stat", "ecm_r2", full(e.r2), ""});
    t.row({"stat", "conditional_r2", full(a.conditional_r2), ""});
    t.row({"stat", "ect_intercept", full(e.ect_intercept), ""});
    return {{"ardl.csv", t.csv()}};
  }
  Table t({"VARIABLES", "LR", "SR"});
  for (const auto& x : e.long_run) t.row({x.name, format_estimate(x.coef, x.std_error), ""});
  for (const auto& x : e.short_run) {
    if (x.name != "C") t.row({x.name, "", format_estimate(x.coef, x.std_error)});
  }
  t.row({"ECT (Speed Adjustment)", "", format_estimate(e.ect.coef, e.ect.std_error)});
  if (const auto* c = find(e.short_run, "C")) t.row({"Constant", "", format_estimate(c->coef, c->std_error)});
  t.row({"R-square", fmt::format("{:.4f}", e.r2), ""});

  Table cond({"Regressor", "Coefficient"});
  for (const auto& x : a.conditional) cond.row({x.name, format_estimate(x.coef, x.std_error)});
  cond.row({"R-square", fmt::format("{:.4f}", a.conditional_r2)});
  cond.row({"Observations", fmt::format("{}", a.conditional_nobs)});

  std::string out = heading("ARDL long-run and short-run estimates") + t.markdown();
  out += fmt::format(
      "\nSelected model {} by {}. Standard errors in parentheses; ***, **, * significant at 1%, 5%, 10%.\n\n",
      a.order.to_string(), to_string(a.criterion));
  out += heading("Conditional error-correction regression") + cond.markdown();
  return {{"ardl.md", out}};
}

// ---- robustness ----

std::vector<RenderedFile> robustness_files(const PipelineReport& r, OutputFormat f) {
  const auto& s = *r.robustness;
  if (f == OutputFormat::csv) {
    Table t({"method", "name", "coef", "std_error", "t_stat", "r2", "bandwidth", "leads", "lags", "nobs"});
    for (const auto& e : s.estimates) {
      for (const auto& c : e.coefficients) {
        t.row({std::string(to_string(e.method)), c.name, full(c.coef), full(c.std_error), full(c.t_stat),
               full(e.r2), fmt::format("{}", e.bandwidth), fmt::format("{}", e.leads), fmt::format("{}", e.lags),
               fmt::format("{}", e.nobs)});
      }
    }
    std::string out = t.csv();
    return {{"robustness.csv", out}};
  }
  std::vector<std::string> header{"Variables"};
  for (const auto& e : s.estimates) header.push_back(std::string(to_string(e.method)));
  Table t(header);
  t.row({r.dependent + " dependent"});
  std::vector<std::string> names = r.regressors;
  names.emplace_back("C");
  for (const auto& n : names) {
    std::vector<std::string> cells{n};
    for (const auto& e : s.estimates) {
      const auto& c = e.at(n);
      cells.push_back(format_estimate(c.coef, c.std_error));
    }
    t.row(cells);
  }
  std::vector<std::string> r2{"R-squared"};
  for (const auto& e : s.estimates) r2.push_back(fmt::format("{:.4f}", e.r2));
  t.row(r2);
  std::string out = heading("Robustness check") + t.markdown();
  out += "\nStandard errors in parentheses use the long-run residual variance; ***, **, * significant at 1%, 5%, "
         "10%.\n";
  if (s.warning) out += fmt::format("\n**Warning:** {}.\n", *s.warning);
  return {{"robustness.md", out}};
}

// ---- causality ----

std::vector<RenderedFile> causality_files(const PipelineReport& r, OutputFormat f) {
  const auto& s = *r.causality;
  if (f == OutputFormat::csv) {
    Table t({"cause", "effect", "lag", "nobs", "f_stat", "p_value", "error"});
    for (const auto& c : s.rows) {
      t.row({c.cause, c.effect, fmt::format("{}", c.lag), fmt::format("{}", c.nobs), c.ok() ? full(c.f_stat) : "",
             c.ok() ? full(c.p_value) : "", c.error.value_or("")});
    }
    return {{"causality.csv", t.csv()}};
  }
  Table t({"Null Hypothesis", "Obs", "F-Statistic", "Prob."});
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& c = s.rows[i];
    const std::string hyp = fmt::format("{} does not Granger-cause {}", c.cause, c.effect);
    const std::string obs = i % 2 == 0 && c.ok() ? fmt::format("{}", c.nobs) : "";
    if (c.ok()) {
      t.row({hyp, obs, fmt::format("{:.5f}", c.f_stat), fmt::format("{:.4f}", c.p_value)});
    } else {
      t.row({hyp, obs, "error", ""});
    }
  }
  Table d({"Pair", "Direction"});
  for (std::size_t i = 0; i < s.directions.size(); ++i) {
    d.row({fmt::format("{} / {}", r.regressors[i], r.dependent), std::string(to_string(s.directions[i]))});
  }
  std::string out = heading("Pairwise Granger causality") + t.markdown();
  out += fmt::format("\nA p-value below {} rejects the null and counts as evidence of Granger causality.\n\n",
                     label(r.level));
  out += d.markdown();
  return {{"causality.md", out}};
}

// ---- diagnostics ----

std::vector<RenderedFile> diagnostics_files(const PipelineReport& r, OutputFormat f) {
  const auto& d = *r.diagnostics;
  const auto& x = d.tests;
  std::vector<RenderedFile> files;
  if (f == OutputFormat::csv) {
    Table t({"test", "statistic", "p_value", "verdict"});
    t.row({"jarque_bera", full(x.jb.statistic), full(x.jb.p_value), std::string(to_string(x.jb_verdict()))});
    t.row({fmt::format("breusch_godfrey_{}", x.lm_order), full(x.lm.statistic), full(x.lm.p_value),
           std::string(to_string(x.lm_verdict()))});
    t.row({"breusch_pagan_godfrey", full(x.bpg.statistic), full(x.bpg.p_value),
           std::string(to_string(x.bpg_verdict()))});
    t.row({"cusum", "", "", d.cusum.stable ? "stable" : "unstable"});
    t.row({"cusum_sq", "", "", d.cusum_sq.stable ? "stable" : "unstable"});
    files.push_back({"diagnostics.csv", t.csv()});
    files.push_back({"cusum.csv", stability_csv(d.cusum)});
    files.push_back({"cusum_sq.csv", stability_csv(d.cusum_sq)});
    return files;
  }
  Table t({"Diagnostic tests", "Coefficient", "p-value", "Verdict"});
  t.row({"Normality test", fmt::format("{:.5f}", x.jb.statistic), fmt::format("{:.4f}", x.jb.p_value),
         std::string(to_string(x.jb_verdict()))});
  t.row({"Serial Correlation test", fmt::format("{:.5f}", x.lm.statistic), fmt::format("{:.4f}", x.lm.p_value),
         std::string(to_string(x.lm_verdict()))});
  t.row({"Heteroscedasticity test", fmt::format("{:.5f}", x.bpg.statistic), fmt::format("{:.4f}", x.bpg.p_value),
         std::string(to_string(x.bpg_verdict()))});
  Table s({"Stability", "Result"});
  s.row({"CUSUM", d.cusum.stable ? "stable" : "unstable"});
  s.row({"CUSUM-SQ", d.cusum_sq.stable ? "stable" : "unstable"});
  std::string out = heading("Diagnostic tests") + t.markdown();
  out += fmt::format(
      "\nJarque-Bera chi2(2), Breusch-Godfrey LM order {} chi2({}), Breusch-Pagan-Godfrey chi2(k-1). A test passes "
      "when p > {}.\n\n",
      x.lm_order, x.lm_order, label(x.level));
  out += s.markdown();
  files.push_back({"diagnostics.md", out});
  return files;
}

double nice_pad(double lo, double hi) { return hi > lo ? 0.05 * (hi - lo) : 1.0; }

}  // namespace

std::string significance_stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.10) return "*";
  return "";
}

std::string format_estimate(double coef, double std_error) {
  return fmt::format("{:.3f}{}({:.4f})", coef, significance_stars(two_sided_p(coef, std_error)), std_error);
}

std::string render_stability_svg(const StabilityPath& path) {
  constexpr double W = 640, H = 360, L = 60, R = 20, T = 40, B = 40;
  if (path.values.empty()) fail(ErrorCode::invalid_argument, "empty stability path");
  const double x0 = path.t_index.front();
  const double x1 = std::max(path.t_index.back(), path.t_index.front() + 1);
  double lo = std::min({*std::min_element(path.values.begin(), path.values.end()),
                        *std::min_element(path.lower.begin(), path.lower.end())});
  double hi = std::max({*std::max_element(path.values.begin(), path.values.end()),
                        *std::max_element(path.upper.begin(), path.upper.end())});
  const double pad = nice_pad(lo, hi);
  lo -= pad;
  hi += pad;
  auto px = [&](double t) { return L + (t - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return T + (hi - v) / (hi - lo) * (H - T - B); };
  auto poly = [&](const std::vector<double>& ys, const char* style) {
    std::string pts;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      pts += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(path.t_index[i]), py(ys[i]));
    }
    return fmt::format("  <polyline fill=\"none\" {} points=\"{}\"/>\n", style, pts);
  };
  const char* title = path.statistic == StabilityStatistic::cusum ? "CUSUM" : "CUSUM of squares";
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      W, H, W, H);
  svg += fmt::format("  <rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", W, H);
  svg += fmt::format("  <text x=\"{:.0f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{} ({})</text>\n", L,
                     title, path.stable ? "stable" : "unstable");
  svg += fmt::format("  <rect x=\"{:.0f}\" y=\"{:.0f}\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"none\" stroke=\"#888\"/>\n",
                     L, T, W - L - R, H - T - B);
  if (lo < 0.0 && hi > 0.0) {
    svg += fmt::format("  <line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#ccc\"/>\n", L, py(0.0),
                       W - R, py(0.0));
  }
  for (double v : {lo + pad, hi - pad}) {
    svg += fmt::format(
        "  <text x=\"{:.0f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{:.3f}</text>\n",
        L - 6, py(v) + 3, v);
  }
  for (double t : {x0, x1}) {
    svg += fmt::format(
        "  <text x=\"{:.2f}\" y=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{:.0f}</text>\n",
        px(t), H - B + 14, t);
  }
  svg += poly(path.lower, "stroke=\"#c0392b\" stroke-dasharray=\"6 4\"");
  svg += poly(path.upper, "stroke=\"#c0392b\" stroke-dasharray=\"6 4\"");
  svg += poly(path.values, "stroke=\"#1f4e99\" stroke-width=\"2\"");
  svg += "</svg>\n";
  return svg;
}

std::vector<RenderedFile> render(const PipelineReport& report, OutputFormat format) {
  std::vector<RenderedFile> files;
  auto append = [&](std::vector<RenderedFile> more) {
    for (auto& f : more) files.push_back(std::move(f));
  };
  if (format == OutputFormat::json) {
    files.push_back({"report.json", report_to_json(report)});
  } else {
    if (report.summary) append(summary_files(report, format));
    if (report.unit_root) append(unit_root_files(report, format));
    if (report.bounds) append(bounds_files(report, format));
    if (report.ardl) append(ardl_files(report, format));
    if (report.robustness) append(robustness_files(report, format));
    if (report.causality) append(causality_files(report, format));
    if (report.diagnostics) append(diagnostics_files(report, format));
  }
  if (report.diagnostics) {
    files.push_back({"cusum.svg", render_stability_svg(report.diagnostics->cusum)});
    files.push_back({"cusum_sq.svg", render_stability_svg(report.diagnostics->cusum_sq)});
  }
  return files;
}

void write_rendered(const std::vector<RenderedFile>& files, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io_error, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  for (const auto& f : files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    out << f.content;
    if (!out) fail(ErrorCode::io_error, fmt::format("cannot write {}", (dir / f.name).string()));
  }
}

}  // namespace ardlkit

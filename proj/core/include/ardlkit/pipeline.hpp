#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ardlkit/ardl.hpp"
#include "ardlkit/causality.hpp"
#include "ardlkit/coint_reg.hpp"
#include "ardlkit/diagnostics.hpp"
#include "ardlkit/frame.hpp"
#include "ardlkit/unit_root.hpp"

namespace ardlkit {

enum class OutputFormat { markdown, csv, json };

std::string_view to_string(OutputFormat f) noexcept;
OutputFormat output_format_from_string(std::string_view name);

/// Flat run configuration. JSON keys match the member names; `granger_lag` and
/// `bandwidth` accept an integer or "auto", `level` a number in
/// {0.01, 0.025, 0.05, 0.1}, `bounds_table` "k5" or "pesaran".
struct PipelineConfig {
  std::string data;
  std::string dependent;
  std::vector<std::string> regressors;
  bool log_transform = true;
  int max_p = 2;
  int max_q = 2;
  InfoCriterion criterion = InfoCriterion::aic;
  Deterministic deterministic = Deterministic::constant;
  Significance level = Significance::p05;
  std::optional<int> granger_lag;
  std::optional<int> bandwidth;
  int dols_leads = 1;
  int dols_lags = 1;
  int lm_order = 2;
  BoundsTable bounds_table = BoundsTable::reference_k5;
  std::string output_dir = "ardlkit-out";
  OutputFormat format = OutputFormat::markdown;
  int jobs = 1;

  /// Names of the analysed columns (with the `L` prefix when log_transform).
  [[nodiscard]] ModelSpec model_spec() const;
  [[nodiscard]] KernelSpec kernel() const { return {Kernel::bartlett, bandwidth}; }
  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Parses a JSON object onto `base`. Unknown keys and ill-typed values raise
/// InvalidArgument naming the key.
PipelineConfig parse_config(std::string_view json, PipelineConfig base = {});
std::string config_to_json(const PipelineConfig& config);

struct SummaryRow {
  std::string variable;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double min = 0.0;
  double std_dev = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  std::size_t nobs = 0;
  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

std::vector<SummaryRow> summary_statistics(const TimeSeriesFrame& frame, std::span<const std::string> names);

struct UnitRootRow {
  std::string variable;
  UnitRootReport adf_level, adf_diff;
  UnitRootReport pp_level, pp_diff;
  UnitRootReport dfgls_level, dfgls_diff;
  IntegrationOrder order = IntegrationOrder::I1;  // from the ADF pair
  friend bool operator==(const UnitRootRow&, const UnitRootRow&) = default;
};

struct ArdlSection {
  ArdlOrder order;
  InfoCriterion criterion = InfoCriterion::aic;
  std::vector<Estimate> conditional;  // the full conditional ECM regression
  double conditional_r2 = 0.0;
  Eigen::Index conditional_nobs = 0;
  EcmResult ecm;
  friend bool operator==(const ArdlSection&, const ArdlSection&) = default;
};

struct RobustnessSection {
  std::vector<CointEstimate> estimates;  // FMOLS, DOLS, CCR
  std::optional<std::string> warning;
  friend bool operator==(const RobustnessSection&, const RobustnessSection&) = default;
};

struct CausalitySection {
  std::vector<CausalityReport> rows;
  std::vector<CausalDirection> directions;  // one per regressor
  friend bool operator==(const CausalitySection&, const CausalitySection&) = default;
};

struct DiagnosticsSection {
  DiagnosticsReport tests;
  StabilityPath cusum;
  StabilityPath cusum_sq;
  friend bool operator==(const DiagnosticsSection&, const DiagnosticsSection&) = default;
};

/// A section is present exactly when its stage ran.
struct PipelineReport {
  std::string dependent;
  std::vector<std::string> regressors;
  int first_year = 0;
  int last_year = 0;
  std::size_t nobs = 0;
  Significance level = Significance::p05;
  std::optional<std::vector<SummaryRow>> summary;
  std::optional<std::vector<UnitRootRow>> unit_root;
  std::optional<BoundsResult> bounds;
  std::optional<ArdlSection> ardl;
  std::optional<RobustnessSection> robustness;
  std::optional<CausalitySection> causality;
  std::optional<DiagnosticsSection> diagnostics;
  std::vector<std::string> warnings;
  friend bool operator==(const PipelineReport&, const PipelineReport&) = default;
};

enum class Stage : std::uint32_t {
  summary = 1u << 0,
  unit_root = 1u << 1,
  bounds = 1u << 2,
  ardl = 1u << 3,
  robustness = 1u << 4,
  causality = 1u << 5,
  diagnostics = 1u << 6,
};

struct StageSet {
  std::uint32_t bits = 0;
  static StageSet all() { return {0x7f}; }
  [[nodiscard]] bool has(Stage s) const noexcept { return (bits & static_cast<std::uint32_t>(s)) != 0; }
  StageSet& add(Stage s) noexcept {
    bits |= static_cast<std::uint32_t>(s);
    return *this;
  }
};

/// Runs the requested stages in the order summary, unit roots, bounds,
/// ARDL/ECM, robustness, causality, diagnostics. An I(2)-looking variable
/// aborts with PossibleI2 before any ARDL stage. Errors are rethrown with the
/// stage name (and variable where relevant) prefixed to the message.
PipelineReport run_pipeline(const TimeSeriesFrame& raw, const PipelineConfig& config,
                            StageSet stages = StageSet::all());
PipelineReport run_pipeline(const PipelineConfig& config, StageSet stages = StageSet::all());

std::string report_to_json(const PipelineReport& report);
PipelineReport report_from_json(std::string_view json);

}  // namespace ardlkit

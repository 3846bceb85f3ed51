#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ardlkit/pipeline.hpp"

namespace ardlkit {

struct RenderedFile {
  std::string name;
  std::string content;
};

/// One file per present table (summary, unit_root, bounds, ardl, robustness,
/// causality, diagnostics) in the requested format, plus stability CSVs for the
/// csv format and one SVG per stability path in every format. The json format
/// writes the whole report as report.json instead of per-table files.
std::vector<RenderedFile> render(const PipelineReport& report, OutputFormat format);

void write_rendered(const std::vector<RenderedFile>& files, const std::filesystem::path& dir);

/// "***", "**", "*" or "" for p below 1%, 5%, 10%.
std::string significance_stars(double p_value);

/// Coefficient with stars from the two-sided normal p-value of coef / se and
/// the standard error in parentheses, e.g. "0.332***(0.0431)".
std::string format_estimate(double coef, double std_error);

/// Polyline of the path with its two bound lines.
std::string render_stability_svg(const StabilityPath& path);

}  // namespace ardlkit

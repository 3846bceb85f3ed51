#include "ardlkit/frame.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "ardlkit/error.hpp"

namespace ardlkit {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

bool parse_double(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_int(std::string_view cell, int& out) {
  if (cell.empty()) return false;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

TimeSeriesFrame::TimeSeriesFrame(std::vector<int> years, std::vector<std::string> names,
                                 std::vector<std::vector<double>> columns)
    : years_(std::move(years)), names_(std::move(names)), columns_(std::move(columns)) {
  if (years_.empty()) fail(ErrorCode::empty_body, "frame has no observations");
  if (names_.size() != columns_.size()) {
    fail(ErrorCode::ragged_rows, "column name count does not match column count");
  }
  for (std::size_t i = 1; i < years_.size(); ++i) {
    if (years_[i] == years_[i - 1]) {
      fail(ErrorCode::duplicate_years, fmt::format("year {} appears twice", years_[i]));
    }
    if (years_[i] < years_[i - 1]) {
      fail(ErrorCode::non_monotone_years,
           fmt::format("year {} follows {}", years_[i], years_[i - 1]));
    }
    if (years_[i] != years_[i - 1] + 1) {
      fail(ErrorCode::non_unit_step,
           fmt::format("gap between {} and {}; annual data required", years_[i - 1], years_[i]));
    }
  }
  std::unordered_set<std::string> seen;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j].empty()) fail(ErrorCode::missing_header, "empty column name");
    if (!seen.insert(names_[j]).second) {
      fail(ErrorCode::invalid_argument, fmt::format("duplicate column '{}'", names_[j]));
    }
    if (columns_[j].size() != years_.size()) {
      fail(ErrorCode::ragged_rows, fmt::format("column '{}' has {} values, expected {}",
                                               names_[j], columns_[j].size(), years_.size()));
    }
    for (std::size_t i = 0; i < years_.size(); ++i) {
      if (!std::isfinite(columns_[j][i])) {
        fail(ErrorCode::non_numeric_cell,
             fmt::format("column '{}' year {} is not finite", names_[j], years_[i]));
      }
    }
  }
}

bool TimeSeriesFrame::contains(std::string_view name) const noexcept {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::span<const double> TimeSeriesFrame::column(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) fail(ErrorCode::unknown_column, fmt::format("no column '{}'", name));
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

TimeSeriesFrame TimeSeriesFrame::with_column(const std::string& name,
                                             std::vector<double> values) const {
  auto names = names_;
  auto columns = columns_;
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    names.push_back(name);
    columns.push_back(std::move(values));
  } else {
    columns[static_cast<std::size_t>(it - names.begin())] = std::move(values);
  }
  return {years_, std::move(names), std::move(columns)};
}

TimeSeriesFrame TimeSeriesFrame::select(std::span<const std::string> names) const {
  std::vector<std::vector<double>> columns;
  columns.reserve(names.size());
  for (const auto& n : names) {
    const auto c = column(n);
    columns.emplace_back(c.begin(), c.end());
  }
  return {years_, {names.begin(), names.end()}, std::move(columns)};
}

TimeSeriesFrame load_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) fail(ErrorCode::missing_header, "input is empty");
  auto header = split(line);
  if (!header.empty() && header.front().starts_with("\xEF\xBB\xBF")) {
    header.front().remove_prefix(3);
  }
  if (header.size() < 2 || header.front() != "year") {
    fail(ErrorCode::missing_header, "header must be 'year,<name>,...'");
  }
  for (std::size_t j = 1; j < header.size(); ++j) names.emplace_back(header[j]);

  std::vector<int> years;
  std::vector<std::vector<double>> columns(names.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      fail(ErrorCode::ragged_rows, fmt::format("line {} has {} cells, header has {}", line_no,
                                               cells.size(), header.size()));
    }
    int year = 0;
    if (!parse_int(cells[0], year)) {
      fail(ErrorCode::non_numeric_cell,
           fmt::format("line {}: year '{}' is not an integer", line_no, cells[0]));
    }
    if (!years.empty()) {
      if (year == years.back()) {
        fail(ErrorCode::duplicate_years, fmt::format("line {}: year {} repeated", line_no, year));
      }
      if (year < years.back()) {
        fail(ErrorCode::non_monotone_years,
             fmt::format("line {}: year {} follows {}", line_no, year, years.back()));
      }
    }
    years.push_back(year);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      double v = 0.0;
      if (!parse_double(cells[j], v)) {
        fail(ErrorCode::non_numeric_cell, fmt::format("line {}: column '{}' value '{}' is not numeric",
                                                      line_no, names[j - 1], cells[j]));
      }
      columns[j - 1].push_back(v);
    }
  }
  if (years.empty()) fail(ErrorCode::empty_body, "no data rows after header");
  return {std::move(years), std::move(names), std::move(columns)};
}

TimeSeriesFrame load_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_csv(in);
}

TimeSeriesFrame load_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, fmt::format("cannot open '{}'", path.string()));
  return load_csv(in);
}

std::string to_csv(const TimeSeriesFrame& frame) {
  std::string out = "year";
  for (const auto& n : frame.names()) out += "," + n;
  out += '\n';
  for (std::size_t i = 0; i < frame.size(); ++i) {
    out += std::to_string(frame.years()[i]);
    for (const auto& n : frame.names()) out += fmt::format(",{}", frame.column(n)[i]);
    out += '\n';
  }
  return out;
}

TimeSeriesFrame natural_log(const TimeSeriesFrame& frame, std::span<const std::string> names) {
  TimeSeriesFrame out = frame;
  for (const auto& name : names) {
    const auto values = frame.column(name);
    std::vector<double> logged(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > 0.0)) {
        fail(ErrorCode::non_positive_value,
             fmt::format("column '{}' year {} has value {}", name, frame.years()[i], values[i]));
      }
      logged[i] = std::log(values[i]);
    }
    out = out.with_column("L" + name, std::move(logged));
  }
  return out;
}

std::vector<double> difference(std::span<const double> series, int order) {
  if (order < 1) fail(ErrorCode::invalid_argument, "difference order must be >= 1");
  if (series.size() <= static_cast<std::size_t>(order)) {
    fail(ErrorCode::series_too_short,
         fmt::format("length {} cannot be differenced {} times", series.size(), order));
  }
  std::vector<double> out(series.begin(), series.end());
  for (int d = 0; d < order; ++d) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
    out.pop_back();
  }
  return out;
}

Eigen::MatrixXd lag_matrix(std::span<const double> series, int max_lag) {
  if (max_lag < 1) fail(ErrorCode::invalid_argument, "max lag must be >= 1");
  const auto n = static_cast<Eigen::Index>(series.size());
  if (n <= max_lag) {
    fail(ErrorCode::series_too_short,
         fmt::format("length {} does not exceed max lag {}", n, max_lag));
  }
  Eigen::MatrixXd out(n - max_lag, max_lag);
  for (Eigen::Index i = 0; i < n - max_lag; ++i) {
    for (Eigen::Index j = 0; j < max_lag; ++j) {
      out(i, j) = series[static_cast<std::size_t>(i + max_lag - j - 1)];
    }
  }
  return out;
}

double alpha(Significance level) noexcept {
  switch (level) {
    case Significance::p01: return 0.01;
    case Significance::p025: return 0.025;
    case Significance::p05: return 0.05;
    case Significance::p10: return 0.10;
  }
  return 0.05;
}

std::string_view label(Significance level) noexcept {
  switch (level) {
    case Significance::p01: return "1%";
    case Significance::p025: return "2.5%";
    case Significance::p05: return "5%";
    case Significance::p10: return "10%";
  }
  return "5%";
}

std::string_view to_string(Deterministic d) noexcept {
  return d == Deterministic::constant ? "constant" : "constant_trend";
}

Significance significance_from_alpha(double a) {
  for (auto level : kAllLevels) {
    if (std::abs(alpha(level) - a) < 1e-12) return level;
  }
  fail(ErrorCode::invalid_argument,
       fmt::format("significance level {} not in {{0.01, 0.025, 0.05, 0.10}}", a));
}

void ModelSpec::validate(const TimeSeriesFrame& frame) const {
  if (regressors.empty()) fail(ErrorCode::invalid_argument, "at least one regressor required");
  if (max_p < 1) fail(ErrorCode::invalid_argument, "max_p must be >= 1");
  if (max_q < 0) fail(ErrorCode::invalid_argument, "max_q must be >= 0");
  if (!frame.contains(dependent)) {
    fail(ErrorCode::unknown_column, fmt::format("dependent '{}' not in data", dependent));
  }
  std::unordered_set<std::string> seen;
  for (const auto& r : regressors) {
    if (r == dependent) {
      fail(ErrorCode::invalid_argument, fmt::format("'{}' is both dependent and regressor", r));
    }
    if (!frame.contains(r)) fail(ErrorCode::unknown_column, fmt::format("regressor '{}' not in data", r));
    if (!seen.insert(r).second) fail(ErrorCode::invalid_argument, fmt::format("regressor '{}' repeated", r));
  }
}

}  // namespace ardlkit

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "its/design.hpp"
#include "its/diagnostics.hpp"
#include "its/effects.hpp"
#include "its/error_models.hpp"
#include "its/estimation.hpp"

namespace its {

enum class OutputFormat { Text, Csv, JsonLines };
OutputFormat parse_output_format(std::string_view text);  // "text" | "csv" | "jsonl"

struct AnalysisConfig {
  std::string input_path;
  std::string date_column = "date";
  std::vector<std::string> outcome_columns;  // empty: every non-date column
  std::string date_format = "YYYY-MM";
  std::string intervention;                  // in date_format
  std::optional<std::string> time_origin;    // defaults to the first period
  ErrorKind error_kind = ErrorKind::Ar1;
  bool hac = false;
  std::optional<int> hac_bandwidth;          // nullopt: automatic
  std::vector<std::string> horizons;         // empty: every post-intervention month
  std::map<std::string, std::string> unit_labels;
  OutputFormat format = OutputFormat::Text;
  std::string output_path;                   // empty: standard output

  // Throws ErrorCode::Config on an unusable combination.
  void validate() const;
};

// Reads a header-row CSV: the date column parsed with `date_format`, plus the
// requested numeric columns (all others when `columns` is empty). Numbers use
// '.' as decimal point; thousands separators are rejected.
TimeSeriesDataset ingest_csv(const std::filesystem::path& path, std::string_view date_column,
                             std::string_view date_format,
                             const std::vector<std::string>& columns = {});
TimeSeriesDataset parse_csv(std::string_view text, std::string_view date_column,
                            std::string_view date_format,
                            const std::vector<std::string>& columns = {});

// Header "date,<labels...>", YYYY-MM dates, shortest round-trip numbers.
std::string dataset_to_csv(const TimeSeriesDataset& data);

struct PlotRow {
  YearMonth period;
  double actual = 0.0;
  double fitted = 0.0;
  double counterfactual = 0.0;  // NaN before the intervention
};

struct OutcomeReport {
  std::string outcome;
  std::string unit_label;
  SegmentedDesign design;
  FitResult fit;
  EffectTable effects;
  std::vector<DiagnosticsReport> diagnostics;  // raw, then whitened for GLS fits
  std::vector<PlotRow> plot;
};

struct Report {
  InterventionSpec spec;
  std::vector<OutcomeReport> outcomes;
};

// Fits every configured outcome (in parallel), then builds effects,
// diagnostics and plot series. Outcome order follows the configuration.
Report run_analysis(const TimeSeriesDataset& data, const AnalysisConfig& config);
Report run_analysis(const AnalysisConfig& config);

std::vector<PlotRow> emit_plot_series(const OutcomeReport& outcome);

enum class ReportSection { Coefficients, FitSummary, Effects, Diagnostics, Acf };
inline constexpr std::array<ReportSection, 5> kAllSections = {
    ReportSection::Coefficients, ReportSection::FitSummary, ReportSection::Effects,
    ReportSection::Diagnostics, ReportSection::Acf};
std::string_view section_name(ReportSection section) noexcept;  // file stem, e.g. "coefficients"

// Text tables round (3 decimals for coefficients, 2 for effects); csv and
// jsonl carry shortest round-trip representations of the stored doubles.
std::string render(const Report& report, ReportSection section, OutputFormat format);
std::string render_plot(const OutcomeReport& outcome, OutputFormat format);

// Shortest decimal string that parses back to exactly `value`; "" for NaN.
std::string format_number(double value);

}  // namespace its

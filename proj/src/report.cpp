#include "its/report.hpp"

#include <future>
#include <limits>

#include "its/error.hpp"

namespace its {

OutputFormat parse_output_format(std::string_view text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "jsonl" || text == "json-lines") return OutputFormat::JsonLines;
  throw Error(ErrorCode::Config, "unknown output format '" + std::string(text) + "' (expected text|csv|jsonl)");
}

void AnalysisConfig::validate() const {
  if (intervention.empty()) throw Error(ErrorCode::Config, "an intervention date is required");
  if (date_column.empty()) throw Error(ErrorCode::Config, "date column name is empty");
  try {
    parse_year_month(intervention, date_format);
    if (time_origin) parse_year_month(*time_origin, date_format);
    for (const auto& h : horizons) parse_year_month(h, date_format);
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  if (hac && error_kind != ErrorKind::Iid)
    throw Error(ErrorCode::Config, "HAC standard errors apply to OLS fits only (use --error iid)");
  if (hac_bandwidth && *hac_bandwidth < 0) throw Error(ErrorCode::Config, "HAC bandwidth must be >= 0");
  for (const auto& c : outcome_columns)
    if (c == date_column) throw Error(ErrorCode::Config, "date column cannot be an outcome");
}

namespace {

DiagnosticsReport safe_diagnose(const Eigen::VectorXd& residuals, ResidualKind kind, int params, int lags) {
  std::span<const double> e(residuals.data(), static_cast<std::size_t>(residuals.size()));
  try {
    return diagnose(e, kind, params, lags);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::Domain) throw;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    DiagnosticsReport r;
    r.residual_kind = kind;
    r.defined = false;
    r.durbin_watson = nan;
    r.acf.assign(static_cast<std::size_t>(lags), nan);
    r.ljung_box = {nan, lags - params, nan};
    return r;
  }
}

OutcomeReport analyze_outcome(const TimeSeriesDataset& data, const AnalysisConfig& config,
                              const InterventionSpec& spec, const std::string& outcome,
                              const std::vector<YearMonth>& horizons) {
  OutcomeReport r;
  r.outcome = outcome;
  auto label = config.unit_labels.find(outcome);
  r.unit_label = label != config.unit_labels.end() ? label->second : "units";
  r.design = build_design(data, outcome, spec);

  if (config.error_kind == ErrorKind::Iid) {
    r.fit = fit_ols(r.design);
    if (config.hac) r.fit = with_hac(r.fit, r.design, config.hac_bandwidth);
  } else {
    try {
      r.fit = fit_gls_ml(r.design, config.error_kind);
    } catch (const ConvergenceError& e) {
      r.fit = e.best();
    }
  }

  r.effects = effect_table(r.fit, spec, horizons, r.unit_label);

  const int lags = default_diagnostic_lags(r.design.n());
  r.diagnostics.push_back(safe_diagnose(r.fit.residuals_raw, ResidualKind::Raw, 0, lags));
  if (r.fit.method == FitMethod::GlsMl || r.fit.method == FitMethod::Gls) {
    const int params = correlation_parameter_count(r.fit.error_kind);
    if (lags > params)
      r.diagnostics.push_back(safe_diagnose(r.fit.residuals_whitened, ResidualKind::Whitened, params, lags));
  }
  r.plot = emit_plot_series(r);
  return r;
}

}  // namespace

Report run_analysis(const TimeSeriesDataset& data, const AnalysisConfig& config) {
  config.validate();
  const YearMonth intervention = parse_year_month(config.intervention, config.date_format);
  std::optional<YearMonth> origin;
  if (config.time_origin) origin = parse_year_month(*config.time_origin, config.date_format);
  Report report{InterventionSpec::for_dataset(data, intervention, origin), {}};

  std::vector<YearMonth> horizons;
  if (config.horizons.empty()) {
    horizons = post_intervention_horizons(report.spec, data.last_period());
  } else {
    for (const auto& h : config.horizons) horizons.push_back(parse_year_month(h, config.date_format));
  }

  std::vector<std::string> outcomes = config.outcome_columns;
  if (outcomes.empty()) outcomes = data.labels();
  for (const auto& o : outcomes)
    if (!data.has_series(o)) throw Error(ErrorCode::Config, "missing column '" + o + "'");

  std::vector<std::future<OutcomeReport>> jobs;
  for (const auto& o : outcomes)
    jobs.push_back(std::async(std::launch::async, analyze_outcome, std::cref(data), std::cref(config),
                              std::cref(report.spec), std::cref(o), std::cref(horizons)));
  // Wait for all before rethrowing so no job outlives the references it holds.
  for (auto& j : jobs) j.wait();
  for (auto& j : jobs) report.outcomes.push_back(j.get());
  return report;
}

Report run_analysis(const AnalysisConfig& config) {
  config.validate();
  const TimeSeriesDataset data =
      ingest_csv(config.input_path, config.date_column, config.date_format, config.outcome_columns);
  return run_analysis(data, config);
}

std::vector<PlotRow> emit_plot_series(const OutcomeReport& outcome) {
  std::vector<PlotRow> rows;
  const auto& d = outcome.design;
  const auto& beta = outcome.fit.beta;
  for (int i = 0; i < d.n(); ++i) {
    const TimeIndex& ti = d.index[static_cast<std::size_t>(i)];
    PlotRow row;
    row.period = d.periods[static_cast<std::size_t>(i)];
    row.actual = d.y(i);
    row.fitted = outcome.fit.fitted(i);
    row.counterfactual = ti.dummy ? beta[0] + beta[1] * ti.time : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace its

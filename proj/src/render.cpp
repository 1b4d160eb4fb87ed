#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "its/error.hpp"
#include "its/report.hpp"

namespace its {

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorCode::Internal, "number formatting failed");
  return std::string(buf, ptr);
}

std::string_view section_name(ReportSection section) noexcept {
  switch (section) {
    case ReportSection::Coefficients: return "coefficients";
    case ReportSection::FitSummary: return "fit_summary";
    case ReportSection::Effects: return "effects";
    case ReportSection::Diagnostics: return "diagnostics";
    case ReportSection::Acf: return "acf";
  }
  return "coefficients";
}

namespace {

using json = nlohmann::ordered_json;

json number(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad(std::string s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

// One table: header plus rows of cells. csv/jsonl share the column names.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string emit_machine(std::string_view section, const Table& t, OutputFormat format) {
  std::string out;
  if (format == OutputFormat::Csv) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ",";
        const json& v = row[c];
        if (v.is_null()) continue;
        if (v.is_number_float()) out += format_number(v.get<double>());
        else if (v.is_string()) out += csv_field(v.get<std::string>());
        else if (v.is_boolean()) out += v.get<bool>() ? "true" : "false";
        else out += v.dump();
      }
      out += "\n";
    }
  } else {
    for (const auto& row : t.rows) {
      json obj;
      obj["section"] = section;
      for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = row[c];
      out += obj.dump() + "\n";
    }
  }
  return out;
}

std::string method_line(const OutcomeReport& o) {
  const FitResult& f = o.fit;
  std::string s = o.outcome + "  [" + std::string(fit_method_name(f.method)) + ", errors " +
                  std::string(error_kind_name(f.error_kind)) + ", n=" + std::to_string(f.n) +
                  ", df=" + std::to_string(f.df) + "]";
  return s;
}

Table coefficient_table(const Report& r) {
  Table t{{"outcome", "term", "estimate", "se", "t", "p", "stars"}, {}};
  for (const auto& o : r.outcomes)
    for (std::size_t k = 0; k < kTermNames.size(); ++k)
      t.rows.push_back({o.outcome, std::string(kTermNames[k]), number(o.fit.beta[k]), number(o.fit.se[k]),
                        number(o.fit.t_stats[k]), number(o.fit.p_values[k]),
                        std::string(significance_stars(o.fit.p_values[k]))});
  return t;
}

Table summary_table(const Report& r) {
  Table t{{"outcome", "method", "error", "n", "df", "sigma2", "scale2", "log_lik", "phi", "theta", "converged",
           "boundary", "iterations"},
          {}};
  const double nan = std::nan("");
  for (const auto& o : r.outcomes) {
    const FitResult& f = o.fit;
    t.rows.push_back({o.outcome, std::string(fit_method_name(f.method)), std::string(error_kind_name(f.error_kind)),
                      f.n, f.df, number(f.sigma2), number(f.scale2), number(f.log_lik),
                      number(f.error_params ? f.error_params->phi : nan),
                      number(f.error_params && f.error_kind == ErrorKind::Arma11 ? f.error_params->theta : nan),
                      f.optimizer.converged, f.optimizer.boundary, f.optimizer.iterations});
  }
  return t;
}

Table effects_table(const Report& r) {
  Table t{{"outcome", "period", "T", "S", "counterfactual", "fitted", "delta_abs", "delta_rel", "rel_defined",
           "unit"},
          {}};
  for (const auto& o : r.outcomes) {
    const EffectTable& e = o.effects;
    for (std::size_t i = 0; i < e.size(); ++i)
      t.rows.push_back({o.outcome, e.horizons[i].period.to_string(), e.horizons[i].time, e.horizons[i].since,
                        number(e.counterfactual[i]), number(e.actual_fitted[i]), number(e.delta_abs[i]),
                        number(e.delta_rel[i]), static_cast<bool>(e.rel_defined[i]), e.unit_label});
  }
  return t;
}

Table diagnostics_table(const Report& r) {
  Table t{{"outcome", "residuals", "durbin_watson", "lb_q", "lb_df", "lb_p", "lags"}, {}};
  for (const auto& o : r.outcomes)
    for (const auto& d : o.diagnostics)
      t.rows.push_back({o.outcome, std::string(residual_kind_name(d.residual_kind)), number(d.durbin_watson),
                        number(d.ljung_box.q), d.ljung_box.df, number(d.ljung_box.p_value),
                        static_cast<int>(d.acf.size())});
  return t;
}

Table acf_table(const Report& r) {
  Table t{{"outcome", "residuals", "lag", "acf"}, {}};
  for (const auto& o : r.outcomes)
    for (const auto& d : o.diagnostics)
      for (std::size_t k = 0; k < d.acf.size(); ++k)
        t.rows.push_back({o.outcome, std::string(residual_kind_name(d.residual_kind)), static_cast<int>(k + 1),
                          number(d.acf[k])});
  return t;
}

std::string coefficients_text(const Report& r) {
  std::string out;
  for (const auto& o : r.outcomes) {
    out += method_line(o) + "\n";
    out += pad("Term", 34, true) + pad("Estimate", 16) + pad("t-stat", 12) + pad("Std.Err", 14) + pad("p", 10) + "\n";
    const std::vector<CoefficientRow> rows = format_significance(o.fit);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out += pad(std::string(rows[k].term), 34, true) + pad(rows[k].estimate_text, 16) + pad(rows[k].t_text, 12) +
             pad(fixed(o.fit.se[k], 3), 14) + pad(fixed(rows[k].p_value, 3), 10) + "\n";
    }
    out += "\n";
  }
  out += "Note: ***, **, * are at 1%, 5%, and 10%; numbers in parentheses are t-statistics.\n";
  return out;
}

std::string summary_text(const Report& r) {
  std::string out;
  for (const auto& o : r.outcomes) {
    const FitResult& f = o.fit;
    out += method_line(o) + "\n";
    out += "  sigma2 (innovation) " + fixed(f.sigma2, 6) + "   log-likelihood " + fixed(f.log_lik, 3) + "\n";
    if (f.error_params) {
      out += "  phi " + fixed(f.error_params->phi, 4);
      if (f.error_kind == ErrorKind::Arma11) out += "   theta " + fixed(f.error_params->theta, 4);
      out += std::string("   converged ") + (f.optimizer.converged ? "yes" : "no") + "   boundary " +
             (f.optimizer.boundary ? "yes" : "no") + "\n";
    }
  }
  return out;
}

std::string effects_text(const Report& r) {
  std::string out;
  for (const auto& o : r.outcomes) {
    const EffectTable& e = o.effects;
    out += "Delta " + o.outcome + "  (intervention " + r.spec.intervention().to_string() + ")\n";
    out += pad("Period", 9, true) + pad("T", 5) + pad("S", 5) + pad("Counterfactual", 17) + pad("Fitted", 14) +
           pad(e.unit_label, 15) + pad(std::string(kRelativeEffectLabel), 10) + "\n";
    for (std::size_t i = 0; i < e.size(); ++i)
      out += pad(e.horizons[i].period.to_string(), 9, true) + pad(std::to_string(e.horizons[i].time), 5) +
             pad(std::to_string(e.horizons[i].since), 5) + pad(fixed(e.counterfactual[i], 2), 17) +
             pad(fixed(e.actual_fitted[i], 2), 14) + pad(fixed(e.delta_abs[i], 2), 15) +
             pad(e.rel_defined[i] ? fixed(e.delta_rel[i], 2) : "NA", 10) + "\n";
    out += "\n";
  }
  out += "Note: Delta is the gap between the fitted and counterfactual series.\n";
  return out;
}

std::string diagnostics_text(const Report& r) {
  std::string out;
  for (const auto& o : r.outcomes) {
    out += method_line(o) + "\n";
    for (const auto& d : o.diagnostics) {
      out += "  " + pad(std::string(residual_kind_name(d.residual_kind)), 9, true) + " Durbin-Watson " +
             fixed(d.durbin_watson, 3) + "   Ljung-Box Q(" + std::to_string(d.acf.size()) + ") " +
             fixed(d.ljung_box.q, 3) + " df " + std::to_string(d.ljung_box.df) + " p " +
             fixed(d.ljung_box.p_value, 3) + "\n";
    }
  }
  return out;
}

std::string acf_text(const Report& r) {
  std::string out;
  for (const auto& o : r.outcomes)
    for (const auto& d : o.diagnostics) {
      out += o.outcome + " (" + std::string(residual_kind_name(d.residual_kind)) + ")  ";
      for (std::size_t k = 0; k < d.acf.size(); ++k)
        out += "r" + std::to_string(k + 1) + "=" + fixed(d.acf[k], 3) + (k + 1 < d.acf.size() ? " " : "");
      out += "\n";
    }
  return out;
}

}  // namespace

std::string render(const Report& report, ReportSection section, OutputFormat format) {
  if (format == OutputFormat::Text) {
    switch (section) {
      case ReportSection::Coefficients: return coefficients_text(report);
      case ReportSection::FitSummary: return summary_text(report);
      case ReportSection::Effects: return effects_text(report);
      case ReportSection::Diagnostics: return diagnostics_text(report);
      case ReportSection::Acf: return acf_text(report);
    }
  }
  Table t;
  switch (section) {
    case ReportSection::Coefficients: t = coefficient_table(report); break;
    case ReportSection::FitSummary: t = summary_table(report); break;
    case ReportSection::Effects: t = effects_table(report); break;
    case ReportSection::Diagnostics: t = diagnostics_table(report); break;
    case ReportSection::Acf: t = acf_table(report); break;
  }
  return emit_machine(section_name(section), t, format);
}

std::string render_plot(const OutcomeReport& outcome, OutputFormat format) {
  Table t{{"period", "actual", "fitted", "counterfactual"}, {}};
  for (const PlotRow& p : outcome.plot)
    t.rows.push_back({p.period.to_string(), number(p.actual), number(p.fitted), number(p.counterfactual)});
  if (format == OutputFormat::Text) {
    std::string out = outcome.outcome + "\n" + pad("Period", 9, true) + pad("Actual", 16) + pad("Fitted", 16) +
                      pad("Counterfactual", 16) + "\n";
    for (const PlotRow& p : outcome.plot)
      out += pad(p.period.to_string(), 9, true) + pad(fixed(p.actual, 3), 16) + pad(fixed(p.fitted, 3), 16) +
             pad(std::isnan(p.counterfactual) ? "" : fixed(p.counterfactual, 3), 16) + "\n";
    return out;
  }
  if (format == OutputFormat::JsonLines) {
    std::string out;
    for (const auto& row : t.rows) {
      json obj;
      obj["section"] = "plot";
      obj["outcome"] = outcome.outcome;
      for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = row[c];
      out += obj.dump() + "\n";
    }
    return out;
  }
  return emit_machine("plot", t, format);
}

}  // namespace its

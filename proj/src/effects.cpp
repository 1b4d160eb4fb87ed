#include "its/effects.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace its {

std::vector<double> counterfactual(const Coefficients& beta, std::span<const int> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (int t : times) out.push_back(beta[0] + beta[1] * t);
  return out;
}

EffectTable effect_table(const Coefficients& beta, const InterventionSpec& spec,
                         std::span<const YearMonth> horizons, std::string unit_label) {
  EffectTable table;
  table.unit_label = std::move(unit_label);
  for (YearMonth period : horizons) {
    if (period < spec.intervention())
      throw Error(ErrorCode::Domain, "horizon " + period.to_string() + " precedes the intervention " +
                                         spec.intervention().to_string());
    const TimeIndex ti = spec.encode(period);
    table.horizons.push_back({period, ti.time, ti.since});
    const double cf = beta[0] + beta[1] * ti.time;
    const double delta = beta[2] + beta[3] * ti.since;
    table.counterfactual.push_back(cf);
    table.delta_abs.push_back(delta);
    table.actual_fitted.push_back(cf + delta);
    const bool defined = std::abs(cf) >= kCounterfactualGuard;
    table.rel_defined.push_back(defined);
    table.delta_rel.push_back(defined ? 100.0 * delta / cf : std::numeric_limits<double>::quiet_NaN());
  }
  return table;
}

std::vector<YearMonth> post_intervention_horizons(const InterventionSpec& spec, YearMonth last) {
  std::vector<YearMonth> out;
  for (YearMonth p = spec.intervention(); p <= last; p = p + 1) out.push_back(p);
  return out;
}

std::vector<CoefficientRow> format_significance(const FitResult& fit) {
  std::vector<CoefficientRow> rows;
  char buf[64];
  for (std::size_t k = 0; k < kTermNames.size(); ++k) {
    CoefficientRow row;
    row.term = kTermNames[k];
    row.estimate = fit.beta[k];
    row.t_stat = fit.t_stats[k];
    row.p_value = fit.p_values[k];
    row.stars = significance_stars(fit.p_values[k]);
    std::snprintf(buf, sizeof buf, "%.3f", fit.beta[k]);
    row.estimate_text = std::string(buf) + std::string(row.stars);
    std::snprintf(buf, sizeof buf, "(%.3f)", fit.t_stats[k]);
    row.t_text = buf;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace its

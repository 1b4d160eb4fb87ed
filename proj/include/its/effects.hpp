#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "its/calendar.hpp"
#include "its/design.hpp"
#include "its/estimation.hpp"

namespace its {

inline constexpr std::string_view kRelativeEffectLabel = "% m-t-m";
inline constexpr double kCounterfactualGuard = 1e-12;

struct EffectHorizon {
  YearMonth period;
  int time = 0;   // T
  int since = 0;  // S
};

// Counterfactual vs fitted gap per post-intervention horizon. Stored values
// are never rounded.
struct EffectTable {
  std::string unit_label = "units";
  std::vector<EffectHorizon> horizons;
  std::vector<double> counterfactual;  // beta0 + beta1 T
  std::vector<double> actual_fitted;   // counterfactual + delta_abs
  std::vector<double> delta_abs;       // beta2 + beta3 S
  std::vector<double> delta_rel;       // 100 delta_abs / counterfactual, NaN when undefined
  std::vector<bool> rel_defined;       // false when |counterfactual| < kCounterfactualGuard

  std::size_t size() const noexcept { return horizons.size(); }
};

// beta0 + beta1 T for each T: the pre-intervention line extrapolated.
std::vector<double> counterfactual(const Coefficients& beta, std::span<const int> times);
inline std::vector<double> counterfactual(const FitResult& fit, std::span<const int> times) {
  return counterfactual(fit.beta, times);
}

// Throws ErrorCode::Domain for any horizon before the intervention month.
EffectTable effect_table(const Coefficients& beta, const InterventionSpec& spec,
                         std::span<const YearMonth> horizons, std::string unit_label = "units");
inline EffectTable effect_table(const FitResult& fit, const InterventionSpec& spec,
                                std::span<const YearMonth> horizons, std::string unit_label = "units") {
  return effect_table(fit.beta, spec, horizons, std::move(unit_label));
}

// Every month from the intervention through `last`.
std::vector<YearMonth> post_intervention_horizons(const InterventionSpec& spec, YearMonth last);

struct CoefficientRow {
  std::string_view term;
  double estimate = 0.0;
  double t_stat = 0.0;
  double p_value = 0.0;
  std::string_view stars;
  std::string estimate_text;  // "243.993***"
  std::string t_text;         // "(16.199)"
};

// Table rows: estimate with stars, t-statistic in parentheses, 3 decimals.
std::vector<CoefficientRow> format_significance(const FitResult& fit);

}  // namespace its

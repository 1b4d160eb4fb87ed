#include "its/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "its/error.hpp"

namespace its {

std::string_view residual_kind_name(ResidualKind kind) noexcept {
  return kind == ResidualKind::Raw ? "raw" : "whitened";
}

double durbin_watson(std::span<const double> e) {
  if (e.size() < 2) throw Error(ErrorCode::Domain, "Durbin-Watson needs at least 2 residuals");
  double num = 0.0, den = e[0] * e[0];
  for (std::size_t t = 1; t < e.size(); ++t) {
    const double d = e[t] - e[t - 1];
    num += d * d;
    den += e[t] * e[t];
  }
  if (den == 0.0) throw Error(ErrorCode::Domain, "Durbin-Watson undefined for all-zero residuals");
  return num / den;
}

std::vector<double> acf(std::span<const double> e, int max_lag) {
  const auto n = static_cast<int>(e.size());
  if (max_lag < 0 || max_lag >= n)
    throw Error(ErrorCode::Domain, "ACF lag must be in [0, n), got " + std::to_string(max_lag));
  double mean = 0.0;
  for (double v : e) mean += v;
  mean /= n;
  double c0 = 0.0;
  for (double v : e) c0 += (v - mean) * (v - mean);
  if (c0 == 0.0) throw Error(ErrorCode::Domain, "ACF undefined for constant residuals");
  std::vector<double> rho(static_cast<std::size_t>(max_lag));
  for (int k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (int t = k; t < n; ++t) ck += (e[t] - mean) * (e[t - k] - mean);
    rho[static_cast<std::size_t>(k - 1)] = ck / c0;
  }
  return rho;
}

LjungBox ljung_box(std::span<const double> e, int lags, int fitted_params) {
  const auto n = static_cast<int>(e.size());
  if (fitted_params < 0 || lags <= fitted_params)
    throw Error(ErrorCode::Domain, "Ljung-Box needs lags > fitted parameters");
  if (lags >= n) throw Error(ErrorCode::Domain, "Ljung-Box needs lags < n");
  const std::vector<double> rho = acf(e, lags);
  double sum = 0.0;
  for (int k = 1; k <= lags; ++k) {
    const double r = rho[static_cast<std::size_t>(k - 1)];
    sum += r * r / (n - k);
  }
  LjungBox lb;
  lb.q = static_cast<double>(n) * (n + 2) * sum;
  lb.df = lags - fitted_params;
  lb.p_value = boost::math::gamma_q(0.5 * lb.df, 0.5 * lb.q);
  return lb;
}

int default_diagnostic_lags(int n) noexcept { return std::max(1, std::min(10, n - 5)); }

DiagnosticsReport diagnose(std::span<const double> residuals, ResidualKind kind, int fitted_params,
                           int lags) {
  DiagnosticsReport r;
  r.residual_kind = kind;
  r.durbin_watson = durbin_watson(residuals);
  r.acf = acf(residuals, lags);
  r.ljung_box = ljung_box(residuals, lags, fitted_params);
  return r;
}

}  // namespace its

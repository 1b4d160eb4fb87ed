#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace its {

enum class ResidualKind { Raw, Whitened };
std::string_view residual_kind_name(ResidualKind kind) noexcept;  // "raw", "whitened"

struct LjungBox {
  double q = 0.0;
  int df = 0;
  double p_value = 1.0;
};

struct DiagnosticsReport {
  ResidualKind residual_kind = ResidualKind::Raw;
  bool defined = true;  // false for all-zero or constant residuals (statistics are NaN)
  double durbin_watson = 0.0;
  std::vector<double> acf;  // lags 1..L
  LjungBox ljung_box;
};

// sum (e_t - e_{t-1})^2 / sum e_t^2. Throws ErrorCode::Domain for n < 2 or
// an all-zero residual vector.
double durbin_watson(std::span<const double> residuals);

// Sample autocorrelations at lags 1..max_lag, normalized by the lag-0 sum.
std::vector<double> acf(std::span<const double> residuals, int max_lag);

// Q = n(n+2) sum_{k<=lags} rho_k^2 / (n-k), chi-square with lags - fitted_params df.
LjungBox ljung_box(std::span<const double> residuals, int lags, int fitted_params);

// min(10, n - 5), at least 1.
int default_diagnostic_lags(int n) noexcept;

DiagnosticsReport diagnose(std::span<const double> residuals, ResidualKind kind, int fitted_params,
                           int lags);

}  // namespace its

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace its {

enum class ErrorKind { Iid, Ar1, Arma11 };

std::string_view error_kind_name(ErrorKind kind) noexcept;  // "iid", "ar1", "arma11"
ErrorKind parse_error_kind(std::string_view text);          // throws ErrorCode::Config

// Number of correlation parameters estimated for a kind (0, 1 or 2).
int correlation_parameter_count(ErrorKind kind) noexcept;

struct ErrorParams {
  double phi = 0.0;     // AR coefficient
  double theta = 0.0;   // MA coefficient
  double sigma2 = 1.0;  // innovation variance
};

// Residual process e_t = phi e_{t-1} + a_t + theta a_{t-1}, a_t ~ N(0, sigma2).
// Construction validates stationarity (|phi| < 1) and invertibility
// (|theta| < 1); unused coefficients must be zero for the kind.
class ErrorModel {
 public:
  ErrorModel(ErrorKind kind, ErrorParams params);

  static ErrorModel iid(double sigma2 = 1.0) { return {ErrorKind::Iid, {0.0, 0.0, sigma2}}; }
  static ErrorModel ar1(double phi, double sigma2 = 1.0) { return {ErrorKind::Ar1, {phi, 0.0, sigma2}}; }
  static ErrorModel arma11(double phi, double theta, double sigma2 = 1.0) {
    return {ErrorKind::Arma11, {phi, theta, sigma2}};
  }

  ErrorKind kind() const noexcept { return kind_; }
  const ErrorParams& params() const noexcept { return params_; }
  double phi() const noexcept { return params_.phi; }
  double theta() const noexcept { return params_.theta; }
  double sigma2() const noexcept { return params_.sigma2; }

  // gamma_0 / sigma2: marginal variance per unit innovation variance.
  double variance_ratio() const noexcept;

 private:
  ErrorKind kind_;
  ErrorParams params_;
};

// Exact process autocovariances gamma_0..gamma_max_lag.
std::vector<double> autocovariance(const ErrorModel& model, int max_lag);

// Dense n x n Toeplitz correlation matrix R[i][j] = gamma_|i-j| / gamma_0.
// Throws ErrorCode::Numerical if R is not numerically positive definite.
Eigen::MatrixXd correlation_matrix(const ErrorModel& model, int n);

// Largest magnitude reachable by the constraint map.
inline constexpr double kParamBound = 1.0 - 1e-6;

// Smooth odd monotone bijection R -> (-kParamBound, kParamBound).
double constrain(double u) noexcept;
double unconstrain(double x);  // inverse; throws ErrorCode::Domain if |x| >= kParamBound

// Maps an unconstrained vector (size = correlation_parameter_count(kind))
// to (phi, theta); sigma2 is left at 1.
ErrorParams constrain_params(std::span<const double> unconstrained, ErrorKind kind);
std::vector<double> unconstrain_params(const ErrorParams& params, ErrorKind kind);

// Lower Cholesky factor L of the n x n correlation matrix (R = L L^T),
// evaluated with the innovations recursion in O(n) rather than by dense
// factorization. solve() applies L^{-1} column by column.
class CorrelationFactor {
 public:
  CorrelationFactor(const ErrorModel& model, int n);

  int size() const noexcept { return n_; }
  double log_det() const noexcept { return log_det_; }

  Eigen::MatrixXd solve(const Eigen::Ref<const Eigen::MatrixXd>& rhs) const;
  Eigen::VectorXd solve_vector(const Eigen::Ref<const Eigen::VectorXd>& rhs) const;

  // Dense L, for verification against a direct Cholesky.
  Eigen::MatrixXd lower() const;

 private:
  int n_;
  double phi_;
  std::vector<double> ma_weight_;  // theta_{t,1} for the one-step predictor
  std::vector<double> inv_scale_;  // sqrt(gamma_0 / v_t)
  double log_det_ = 0.0;
};

}  // namespace its

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "its/design.hpp"
#include "its/error.hpp"
#include "its/error_models.hpp"

namespace its {

// beta0 level, beta1 pre-trend, beta2 level change, beta3 trend change.
using Coefficients = std::array<double, kDesignColumns>;

inline constexpr std::array<std::string_view, kDesignColumns> kTermNames = {
    "Constant", "Time", "Post-intervention period", "Time x post-intervention period"};

enum class FitMethod { Ols, Gls, GlsMl, OlsHac };

std::string_view fit_method_name(FitMethod method) noexcept;  // "OLS", "GLS", "GLS-ML", "OLS-HAC"

struct OptimizerReport {
  int starts = 0;
  int iterations = 0;   // summed over starts
  int evaluations = 0;  // summed over starts
  bool converged = true;
  bool boundary = false;  // |phi| or |theta| within kBoundaryFlag of the clamp
};

struct FitResult {
  FitMethod method = FitMethod::Ols;
  ErrorKind error_kind = ErrorKind::Iid;
  Coefficients beta{};
  Coefficients se{};
  Coefficients t_stats{};
  Coefficients p_values{};
  int n = 0;
  int df = 0;
  // Innovation-variance estimate. OLS: RSS/(n-4). GLS: ML scale divided by
  // gamma_0/sigma2 of the error model.
  double sigma2 = 0.0;
  // Marginal residual variance the standard errors are scaled by.
  // OLS: RSS/(n-4); GLS: whitened RSS / n.
  double scale2 = 0.0;
  std::optional<ErrorParams> error_params;
  double log_lik = 0.0;
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals_raw;
  Eigen::VectorXd residuals_whitened;
  OptimizerReport optimizer;
};

// Raised by fit_gls_ml when the winning start hits the iteration cap. The
// best iterate is still available.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, FitResult best)
      : Error(ErrorCode::Convergence, message), best_(std::move(best)) {}
  const FitResult& best() const noexcept { return best_; }

 private:
  FitResult best_;
};

// Least squares on an arbitrary full-column-rank design via column-pivoted
// Householder QR. covariance is (X^T X)^{-1}, assembled from the triangular
// factor. Throws ErrorCode::SingularDesign on rank deficiency.
struct LeastSquares {
  Eigen::VectorXd beta;
  Eigen::MatrixXd covariance;
  Eigen::VectorXd residuals;
  double rss = 0.0;
};
LeastSquares least_squares(const Eigen::Ref<const Eigen::MatrixXd>& X,
                           const Eigen::Ref<const Eigen::VectorXd>& y);

FitResult fit_ols(const SegmentedDesign& design);

// GLS with fixed correlation parameters, by whitening with the Cholesky
// factor of R. model.sigma2 is ignored; the scale is estimated by ML.
FitResult fit_gls(const SegmentedDesign& design, const ErrorModel& model);

// Profile Gaussian log-likelihood with beta and the scale concentrated out,
// at correlation parameters given on the unconstrained optimizer scale.
double profile_log_likelihood(const SegmentedDesign& design, ErrorKind kind,
                              std::span<const double> unconstrained);

inline constexpr double kBoundaryFlag = 0.999;

struct MlOptions {
  int max_iterations = 500;
  double f_tolerance = 1e-8;
  double x_tolerance = 1e-7;
  std::array<double, 3> phi_starts = {-0.3, 0.0, 0.5};
};

// Maximizes the profile likelihood over (phi[, theta]) by Nelder-Mead from
// each phi start (theta starts at 0); best log-likelihood wins, ties go to the
// smaller |phi|. kind == Iid degenerates to fit_gls with identity correlation.
FitResult fit_gls_ml(const SegmentedDesign& design, ErrorKind kind, const MlOptions& options = {});

// Newey-West bandwidth floor(4 (n/100)^(2/9)).
int auto_bandwidth(int n) noexcept;

// Bartlett-kernel HAC standard errors for an OLS fit. bandwidth 0 gives
// White (HC0) errors; nullopt uses auto_bandwidth.
Coefficients hac_se(const FitResult& ols, const SegmentedDesign& design, std::optional<int> bandwidth);

// Copy of an OLS fit with HAC standard errors and recomputed t / p.
FitResult with_hac(const FitResult& ols, const SegmentedDesign& design, std::optional<int> bandwidth);

// Two-sided Student-t tail probability P(|T_df| >= |t|).
double p_value(double t, int df);

// Quantile of Student-t with df degrees of freedom.
double t_quantile(double probability, int df);

// "***" p < 0.01, "**" p < 0.05, "*" p < 0.10, else "".
std::string_view significance_stars(double p) noexcept;

}  // namespace its

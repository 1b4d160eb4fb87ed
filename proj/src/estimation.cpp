#include "its/estimation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "its/nelder_mead.hpp"

namespace its {

std::string_view fit_method_name(FitMethod method) noexcept {
  switch (method) {
    case FitMethod::Ols: return "OLS";
    case FitMethod::Gls: return "GLS";
    case FitMethod::GlsMl: return "GLS-ML";
    case FitMethod::OlsHac: return "OLS-HAC";
  }
  return "OLS";
}

LeastSquares least_squares(const Eigen::Ref<const Eigen::MatrixXd>& X,
                           const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (X.rows() != y.size()) throw Error(ErrorCode::Internal, "design/response size mismatch");
  if (X.rows() < X.cols())
    throw Error(ErrorCode::SingularDesign, "fewer observations than coefficients");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < X.cols())
    throw Error(ErrorCode::SingularDesign, "design matrix is rank deficient (rank " +
                                               std::to_string(qr.rank()) + " of " +
                                               std::to_string(X.cols()) + ")");
  LeastSquares ls;
  ls.beta = qr.solve(y);
  ls.residuals = y - X * ls.beta;
  ls.rss = ls.residuals.squaredNorm();

  const Eigen::Index p = X.cols();
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd permuted = r_inv * r_inv.transpose();
  ls.covariance = qr.colsPermutation() * permuted * qr.colsPermutation().transpose();
  return ls;
}

namespace {

void fill_inference(FitResult& fit, const Eigen::MatrixXd& covariance) {
  for (int i = 0; i < kDesignColumns; ++i) {
    const auto k = static_cast<std::size_t>(i);
    fit.se[k] = std::sqrt(fit.scale2 * covariance(i, i));
    fit.t_stats[k] = fit.se[k] > 0.0 ? fit.beta[k] / fit.se[k]
                                     : std::numeric_limits<double>::quiet_NaN();
    fit.p_values[k] = std::isfinite(fit.t_stats[k]) ? p_value(fit.t_stats[k], fit.df)
                                                    : std::numeric_limits<double>::quiet_NaN();
  }
}

double gaussian_log_lik(int n, double scale2, double log_det) {
  const double nn = n;
  return -0.5 * nn * std::log(2.0 * std::numbers::pi * scale2) - 0.5 * log_det - 0.5 * nn;
}

void check_design(const SegmentedDesign& design) {
  if (design.X.cols() != kDesignColumns || design.X.rows() != design.y.size())
    throw Error(ErrorCode::Internal, "malformed segmented design");
}

}  // namespace

FitResult fit_ols(const SegmentedDesign& design) {
  check_design(design);
  const LeastSquares ls = least_squares(design.X, design.y);
  FitResult fit;
  fit.method = FitMethod::Ols;
  fit.error_kind = ErrorKind::Iid;
  fit.n = design.n();
  fit.df = fit.n - kDesignColumns;
  for (int i = 0; i < kDesignColumns; ++i) fit.beta[static_cast<std::size_t>(i)] = ls.beta(i);
  fit.scale2 = fit.df > 0 ? ls.rss / fit.df : std::numeric_limits<double>::quiet_NaN();
  fit.sigma2 = fit.scale2;
  fit.log_lik = gaussian_log_lik(fit.n, ls.rss / fit.n, 0.0);
  fit.fitted = design.X * ls.beta;
  fit.residuals_raw = ls.residuals;
  fit.residuals_whitened = ls.residuals;
  fill_inference(fit, ls.covariance);
  return fit;
}

FitResult fit_gls(const SegmentedDesign& design, const ErrorModel& model) {
  check_design(design);
  const int n = design.n();
  const CorrelationFactor factor(model, n);
  const Eigen::MatrixXd Xw = factor.solve(design.X);
  const Eigen::VectorXd yw = factor.solve_vector(design.y);
  const LeastSquares ls = least_squares(Xw, yw);

  FitResult fit;
  fit.method = FitMethod::Gls;
  fit.error_kind = model.kind();
  fit.n = n;
  fit.df = n - kDesignColumns;
  for (int i = 0; i < kDesignColumns; ++i) fit.beta[static_cast<std::size_t>(i)] = ls.beta(i);
  fit.scale2 = ls.rss / n;
  const double ratio = model.kind() == ErrorKind::Iid ? 1.0 : model.variance_ratio();
  fit.sigma2 = fit.scale2 / ratio;
  if (model.kind() != ErrorKind::Iid) fit.error_params = ErrorParams{model.phi(), model.theta(), fit.sigma2};
  fit.log_lik = gaussian_log_lik(n, fit.scale2, factor.log_det());
  fit.fitted = design.X * ls.beta;
  fit.residuals_raw = design.y - fit.fitted;
  fit.residuals_whitened = ls.residuals;
  fill_inference(fit, ls.covariance);
  return fit;
}

double profile_log_likelihood(const SegmentedDesign& design, ErrorKind kind,
                              std::span<const double> unconstrained) {
  const ErrorParams p = constrain_params(unconstrained, kind);
  const ErrorModel model(kind, {p.phi, p.theta, 1.0});
  const CorrelationFactor factor(model, design.n());
  const LeastSquares ls = least_squares(factor.solve(design.X), factor.solve_vector(design.y));
  return gaussian_log_lik(design.n(), ls.rss / design.n(), factor.log_det());
}

FitResult fit_gls_ml(const SegmentedDesign& design, ErrorKind kind, const MlOptions& options) {
  check_design(design);
  if (kind == ErrorKind::Iid) {
    FitResult fit = fit_gls(design, ErrorModel::iid());
    fit.method = FitMethod::GlsMl;
    return fit;
  }

  auto objective = [&](std::span<const double> u) {
    try {
      return -profile_log_likelihood(design, kind, u);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  NelderMeadOptions nm;
  nm.max_iterations = options.max_iterations;
  nm.f_tolerance = options.f_tolerance;
  nm.x_tolerance = options.x_tolerance;

  OptimizerReport report;
  NelderMeadResult best;
  bool have_best = false;
  for (double phi0 : options.phi_starts) {
    ErrorParams start{phi0, 0.0, 1.0};
    NelderMeadResult r = nelder_mead(objective, unconstrain_params(start, kind), nm);
    ++report.starts;
    report.iterations += r.iterations;
    report.evaluations += r.evaluations;
    if (!have_best) {
      best = std::move(r);
      have_best = true;
      continue;
    }
    const double phi_r = constrain(r.x[0]), phi_best = constrain(best.x[0]);
    const bool better = r.value < best.value - 1e-12 ||
                        (std::abs(r.value - best.value) <= 1e-12 && std::abs(phi_r) < std::abs(phi_best));
    if (better) best = std::move(r);
  }

  const ErrorParams p = constrain_params(best.x, kind);
  FitResult fit = fit_gls(design, ErrorModel(kind, {p.phi, p.theta, 1.0}));
  fit.method = FitMethod::GlsMl;
  report.converged = best.converged;
  report.boundary = std::abs(p.phi) >= kBoundaryFlag || std::abs(p.theta) >= kBoundaryFlag;
  fit.optimizer = report;
  if (!best.converged)
    throw ConvergenceError("likelihood maximization did not converge in " +
                               std::to_string(options.max_iterations) + " iterations",
                           std::move(fit));
  return fit;
}

int auto_bandwidth(int n) noexcept {
  return static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
}

Coefficients hac_se(const FitResult& ols, const SegmentedDesign& design, std::optional<int> bandwidth) {
  if (ols.method != FitMethod::Ols)
    throw Error(ErrorCode::Domain, "HAC standard errors require an OLS fit");
  const int n = design.n();
  const int lags = bandwidth.value_or(auto_bandwidth(n));
  if (lags < 0 || lags >= n)
    throw Error(ErrorCode::Domain, "HAC bandwidth must be in [0, n), got " + std::to_string(lags));
  const Eigen::MatrixXd& X = design.X;
  const Eigen::VectorXd& e = ols.residuals_raw;

  // Scores x_t e_t.
  const Eigen::MatrixXd scores = X.array().colwise() * e.array();
  Eigen::MatrixXd meat = scores.transpose() * scores;
  for (int l = 1; l <= lags; ++l) {
    const double w = 1.0 - static_cast<double>(l) / (lags + 1);
    const Eigen::MatrixXd gamma = scores.bottomRows(n - l).transpose() * scores.topRows(n - l);
    meat += w * (gamma + gamma.transpose());
  }
  const Eigen::MatrixXd bread = least_squares(X, design.y).covariance;
  const Eigen::MatrixXd v = bread * meat * bread;
  Coefficients se{};
  for (int i = 0; i < kDesignColumns; ++i) se[static_cast<std::size_t>(i)] = std::sqrt(v(i, i));
  return se;
}

FitResult with_hac(const FitResult& ols, const SegmentedDesign& design, std::optional<int> bandwidth) {
  FitResult fit = ols;
  fit.se = hac_se(ols, design, bandwidth);
  fit.method = FitMethod::OlsHac;
  for (std::size_t k = 0; k < fit.se.size(); ++k) {
    fit.t_stats[k] = fit.se[k] > 0.0 ? fit.beta[k] / fit.se[k] : std::numeric_limits<double>::quiet_NaN();
    fit.p_values[k] = std::isfinite(fit.t_stats[k]) ? p_value(fit.t_stats[k], fit.df)
                                                    : std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

double p_value(double t, int df) {
  if (df < 1) throw Error(ErrorCode::Domain, "Student-t needs df >= 1");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double t_quantile(double probability, int df) {
  if (df < 1) throw Error(ErrorCode::Domain, "Student-t needs df >= 1");
  if (!(probability > 0.0 && probability < 1.0))
    throw Error(ErrorCode::Domain, "quantile probability must lie in (0, 1)");
  return boost::math::quantile(boost::math::students_t(df), probability);
}

std::string_view significance_stars(double p) noexcept {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.10) return "*";
  return "";
}

}  // namespace its

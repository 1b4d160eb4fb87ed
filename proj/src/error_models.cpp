#include "its/error_models.hpp"

#include <cmath>
#include <string>

#include "its/error.hpp"

namespace its {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Iid: return "iid";
    case ErrorKind::Ar1: return "ar1";
    case ErrorKind::Arma11: return "arma11";
  }
  return "iid";
}

ErrorKind parse_error_kind(std::string_view text) {
  if (text == "iid") return ErrorKind::Iid;
  if (text == "ar1") return ErrorKind::Ar1;
  if (text == "arma11") return ErrorKind::Arma11;
  throw Error(ErrorCode::Config, "unknown error kind '" + std::string(text) + "' (expected iid|ar1|arma11)");
}

int correlation_parameter_count(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Iid: return 0;
    case ErrorKind::Ar1: return 1;
    case ErrorKind::Arma11: return 2;
  }
  return 0;
}

ErrorModel::ErrorModel(ErrorKind kind, ErrorParams params) : kind_(kind), params_(params) {
  if (!std::isfinite(params.sigma2) || params.sigma2 < 0.0)
    throw Error(ErrorCode::Domain, "innovation variance must be finite and non-negative");
  if (!(std::abs(params.phi) < 1.0))
    throw Error(ErrorCode::Domain, "non-stationary AR coefficient phi=" + std::to_string(params.phi));
  if (!(std::abs(params.theta) < 1.0))
    throw Error(ErrorCode::Domain, "non-invertible MA coefficient theta=" + std::to_string(params.theta));
  if (kind == ErrorKind::Iid && (params.phi != 0.0 || params.theta != 0.0))
    throw Error(ErrorCode::Domain, "iid model takes no correlation parameters");
  if (kind == ErrorKind::Ar1 && params.theta != 0.0)
    throw Error(ErrorCode::Domain, "AR(1) model takes no MA coefficient");
}

double ErrorModel::variance_ratio() const noexcept {
  const double phi = params_.phi, theta = params_.theta;
  return (1.0 + theta * theta + 2.0 * phi * theta) / (1.0 - phi * phi);
}

std::vector<double> autocovariance(const ErrorModel& model, int max_lag) {
  if (max_lag < 0) throw Error(ErrorCode::Domain, "max_lag must be non-negative");
  std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
  const double phi = model.phi(), theta = model.theta(), s2 = model.sigma2();
  switch (model.kind()) {
    case ErrorKind::Iid:
      gamma[0] = s2;
      break;
    case ErrorKind::Ar1:
      gamma[0] = s2 / (1.0 - phi * phi);
      for (std::size_t k = 1; k < gamma.size(); ++k) gamma[k] = phi * gamma[k - 1];
      break;
    case ErrorKind::Arma11:
      gamma[0] = s2 * model.variance_ratio();
      if (gamma.size() > 1) gamma[1] = s2 * (1.0 + phi * theta) * (phi + theta) / (1.0 - phi * phi);
      for (std::size_t k = 2; k < gamma.size(); ++k) gamma[k] = phi * gamma[k - 1];
      break;
  }
  return gamma;
}

Eigen::MatrixXd correlation_matrix(const ErrorModel& model, int n) {
  if (n < 1) throw Error(ErrorCode::Domain, "correlation matrix needs n >= 1");
  // Unit innovation variance: correlations do not depend on sigma2.
  ErrorModel unit(model.kind(), {model.phi(), model.theta(), 1.0});
  const std::vector<double> gamma = autocovariance(unit, n - 1);
  Eigen::MatrixXd R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = gamma[static_cast<std::size_t>(std::abs(i - j))] / gamma[0];
  Eigen::LLT<Eigen::MatrixXd> llt(R);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::Numerical, "correlation matrix is not positive definite (near unit root?)");
  return R;
}

double constrain(double u) noexcept { return kParamBound * u / (1.0 + std::abs(u)); }

double unconstrain(double x) {
  if (!(std::abs(x) < kParamBound))
    throw Error(ErrorCode::Domain, "value outside the constrained range: " + std::to_string(x));
  const double y = x / kParamBound;
  return y / (1.0 - std::abs(y));
}

ErrorParams constrain_params(std::span<const double> u, ErrorKind kind) {
  if (static_cast<int>(u.size()) != correlation_parameter_count(kind))
    throw Error(ErrorCode::Domain, "wrong number of unconstrained parameters");
  ErrorParams p;
  if (kind != ErrorKind::Iid) p.phi = constrain(u[0]);
  if (kind == ErrorKind::Arma11) p.theta = constrain(u[1]);
  return p;
}

std::vector<double> unconstrain_params(const ErrorParams& params, ErrorKind kind) {
  std::vector<double> u;
  if (kind != ErrorKind::Iid) u.push_back(unconstrain(params.phi));
  if (kind == ErrorKind::Arma11) u.push_back(unconstrain(params.theta));
  return u;
}

CorrelationFactor::CorrelationFactor(const ErrorModel& model, int n)
    : n_(n), phi_(model.phi()) {
  if (n < 1) throw Error(ErrorCode::Domain, "correlation factor needs n >= 1");
  const double theta = model.theta();
  const double gamma0 = model.kind() == ErrorKind::Iid ? 1.0 : model.variance_ratio();
  ma_weight_.assign(static_cast<std::size_t>(n), 0.0);
  inv_scale_.assign(static_cast<std::size_t>(n), 0.0);
  // One-step prediction error variances v_t (unit innovation scale).
  double v = gamma0;
  for (int t = 0; t < n; ++t) {
    if (t > 0) {
      ma_weight_[static_cast<std::size_t>(t)] = theta / v;
      v = 1.0 + theta * theta - theta * theta / v;
    }
    if (!std::isfinite(v) || v <= 1e-300)
      throw Error(ErrorCode::Numerical, "correlation factorization broke down (near unit root?)");
    inv_scale_[static_cast<std::size_t>(t)] = std::sqrt(gamma0 / v);
    log_det_ += std::log(v / gamma0);
  }
}

Eigen::MatrixXd CorrelationFactor::solve(const Eigen::Ref<const Eigen::MatrixXd>& rhs) const {
  if (rhs.rows() != n_) throw Error(ErrorCode::Internal, "dimension mismatch in correlation solve");
  Eigen::MatrixXd out(rhs.rows(), rhs.cols());
  for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
    double prev_x = 0.0, prev_u = 0.0;
    for (int t = 0; t < n_; ++t) {
      const double x = rhs(t, c);
      const double prediction = t == 0 ? 0.0 : phi_ * prev_x + ma_weight_[static_cast<std::size_t>(t)] * prev_u;
      const double u = x - prediction;
      out(t, c) = u * inv_scale_[static_cast<std::size_t>(t)];
      prev_x = x;
      prev_u = u;
    }
  }
  return out;
}

Eigen::VectorXd CorrelationFactor::solve_vector(const Eigen::Ref<const Eigen::VectorXd>& rhs) const {
  Eigen::MatrixXd m = solve(Eigen::Ref<const Eigen::MatrixXd>(rhs));
  return m.col(0);
}

Eigen::MatrixXd CorrelationFactor::lower() const {
  Eigen::MatrixXd inv = solve(Eigen::MatrixXd::Identity(n_, n_));
  return inv.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n_, n_));
}

}  // namespace its

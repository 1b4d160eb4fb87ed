#include "its/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace its {

double NormalSource::uniform() noexcept {
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSource::next() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform(), u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<double> gen_arma_noise(const ErrorModel& model, int n, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorCode::Domain, "noise length must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (model.sigma2() == 0.0) return out;

  NormalSource rng(seed);
  const double sigma = std::sqrt(model.sigma2());
  const double phi = model.phi(), theta = model.theta();
  const double gamma0 = autocovariance(model, 0)[0];
  // Cov(e, a) = sigma2, so e | a ~ N(a, gamma0 - sigma2).
  double a_prev = sigma * rng.next();
  double e_prev = a_prev + std::sqrt(std::max(0.0, gamma0 - model.sigma2())) * rng.next();
  for (int t = 0; t < kBurnIn + n; ++t) {
    const double a = sigma * rng.next();
    const double e = phi * e_prev + a + theta * a_prev;
    if (t >= kBurnIn) out[static_cast<std::size_t>(t - kBurnIn)] = e;
    e_prev = e;
    a_prev = a;
  }
  return out;
}

void SimulationSpec::validate() const {
  if (!(1 < intervention_index && intervention_index <= n))
    throw Error(ErrorCode::Config, "simulation needs 1 < intervention_index <= n");
  if (replicates < 1) throw Error(ErrorCode::Config, "simulation needs at least one replicate");
}

InterventionSpec SimulationSpec::intervention() const {
  return InterventionSpec(start + (intervention_index - 1), start);
}

TimeSeriesDataset gen_its_dataset(const SimulationSpec& spec) {
  spec.validate();
  const std::vector<double> noise = gen_arma_noise(spec.error, spec.n, spec.seed);
  const InterventionSpec iv = spec.intervention();
  std::vector<double> y(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    const TimeIndex ti = iv.encode(spec.start + i);
    y[static_cast<std::size_t>(i)] = spec.beta[0] + spec.beta[1] * ti.time + spec.beta[2] * ti.dummy +
                                     spec.beta[3] * ti.dummy * ti.since + noise[static_cast<std::size_t>(i)];
  }
  return TimeSeriesDataset(spec.start, {spec.label}, {std::move(y)});
}

CoverageResult monte_carlo_coverage(const SimulationSpec& spec, const CoverageOptions& options) {
  spec.validate();
  if (options.method != FitMethod::Ols && options.method != FitMethod::GlsMl)
    throw Error(ErrorCode::Config, "coverage supports OLS and GLS-ML fits");
  if (!(options.level > 0.0 && options.level < 1.0))
    throw Error(ErrorCode::Config, "coverage level must lie in (0, 1)");
  if (spec.replicates < kMinCoverageReplicates)
    throw Error(ErrorCode::Config, "coverage needs at least " + std::to_string(kMinCoverageReplicates) + " replicates");

  const int reps = spec.replicates;
  std::vector<std::array<bool, kDesignColumns>> hits(static_cast<std::size_t>(reps));
  std::vector<char> unconverged(static_cast<std::size_t>(reps), 0);

  auto run = [&](int r) {
    SimulationSpec s = spec;
    s.seed = replicate_seed(spec.seed, static_cast<std::uint64_t>(r));
    const TimeSeriesDataset data = gen_its_dataset(s);
    const SegmentedDesign design = build_design(data, s.label, s.intervention());
    FitResult fit;
    if (options.method == FitMethod::Ols) {
      fit = fit_ols(design);
    } else {
      try {
        fit = fit_gls_ml(design, options.ml_kind);
      } catch (const ConvergenceError& e) {
        fit = e.best();
        unconverged[static_cast<std::size_t>(r)] = 1;
      }
    }
    const double crit = t_quantile(0.5 + 0.5 * options.level, fit.df);
    for (std::size_t k = 0; k < kDesignColumns; ++k)
      hits[static_cast<std::size_t>(r)][k] = std::abs(fit.beta[k] - spec.beta[k]) <= crit * fit.se[k];
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(reps));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int r = static_cast<int>(w); r < reps; r += static_cast<int>(threads)) run(r);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  CoverageResult result;
  result.replicates = reps;
  for (int r = 0; r < reps; ++r) {
    for (std::size_t k = 0; k < kDesignColumns; ++k)
      if (hits[static_cast<std::size_t>(r)][k]) result.coverage[k] += 1.0;
    result.unconverged += unconverged[static_cast<std::size_t>(r)];
  }
  for (double& c : result.coverage) c /= reps;
  return result;
}

const std::array<ReferenceSeries, 5> kReferenceSeries = {{
    {"BJ", "Billion IDR", {-27.782, 243.993, -3665.934, 248.572}, {-0.134, 16.199, -7.958, 5.576}},
    {"BLJ", "Billion IDR", {-4.442, 40.581, -762.727, 96.908}, {-0.039, 5.259, -4.163, 4.865}},
    {"BT", "Billion IDR", {-25.251, 284.144, -4408.780, 341.676}, {-0.098, 15.114, -7.738, 6.176}},
    {"TKB90", "Point", {100.344, -0.195, -0.308, 0.184}, {167.158, -4.839, -0.545, 1.426}},
    {"TWP90", "Point", {-0.336, 0.194, 0.306, -0.183}, {-0.558, 4.823, 0.564, -1.417}},
}};

namespace {
SegmentedDesign reference_design() {
  SimulationSpec s;
  s.n = kReferenceLength;
  s.intervention_index = kReferenceInterventionIndex;
  s.start = kReferenceStart;
  s.error = ErrorModel::iid(0.0);
  return build_design(gen_its_dataset(s), s.label, s.intervention());
}
}  // namespace

double reference_noise_sd(const ReferenceSeries& series) {
  static const double unit_se = [] {
    const SegmentedDesign d = reference_design();
    return std::sqrt(least_squares(d.X, d.y).covariance(1, 1));
  }();
  return std::abs(series.beta[1] / series.t_stats[1]) / unit_se;
}

TimeSeriesDataset gen_reference_dataset(std::uint64_t seed, ErrorKind kind, double phi, double theta) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
  std::uint64_t stream = 0;
  for (const ReferenceSeries& ref : kReferenceSeries) {
    ErrorParams p{kind == ErrorKind::Iid ? 0.0 : phi, kind == ErrorKind::Arma11 ? theta : 0.0, 1.0};
    const ErrorModel shape(kind, p);
    const double sd = reference_noise_sd(ref);
    const double ratio = kind == ErrorKind::Iid ? 1.0 : shape.variance_ratio();
    p.sigma2 = sd * sd / ratio;

    SimulationSpec s;
    s.n = kReferenceLength;
    s.intervention_index = kReferenceInterventionIndex;
    s.start = kReferenceStart;
    s.beta = ref.beta;
    s.error = ErrorModel(kind, p);
    s.seed = replicate_seed(seed, stream++);
    s.label = std::string(ref.label);
    const TimeSeriesDataset one = gen_its_dataset(s);
    const auto y = one.series(0);
    labels.emplace_back(ref.label);
    values.emplace_back(y.begin(), y.end());
  }
  return TimeSeriesDataset(kReferenceStart, std::move(labels), std::move(values));
}

}  // namespace its

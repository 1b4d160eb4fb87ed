#include <doctest.h>

#include <numeric>

#include "its/error.hpp"
#include "its/estimation.hpp"
#include "its/simulate.hpp"

using namespace its;

namespace {

const ReferenceSeries& bt() { return kReferenceSeries[2]; }

SimulationSpec bt_spec(ErrorModel error, std::uint64_t seed) {
  SimulationSpec spec;
  spec.n = kReferenceLength;
  spec.intervention_index = kReferenceInterventionIndex;
  spec.beta = bt().beta;
  spec.error = error;
  spec.seed = seed;
  return spec;
}

SimulationSpec generic(int n, ErrorModel error, int replicates) {
  SimulationSpec spec;
  spec.n = n;
  spec.intervention_index = n / 2;
  spec.beta = {10.0, 0.5, -4.0, 0.3};
  spec.error = error;
  spec.seed = 0x5eed;
  spec.replicates = replicates;
  return spec;
}

}  // namespace

TEST_CASE("normal source") {
  NormalSource a(1), b(1);
  double sum = 0.0, sq = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = a.next();
    CHECK(x == b.next());
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.01);

  NormalSource u(2);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(replicate_seed(12, 5) == (12u ^ 5u));
}

TEST_CASE("noise generator") {
  const auto zero = gen_arma_noise(ErrorModel::arma11(0.5, 0.3, 0.0), 50, 3);
  CHECK(std::all_of(zero.begin(), zero.end(), [](double v) { return v == 0.0; }));

  CHECK(gen_arma_noise(ErrorModel::ar1(0.6), 100, 9) == gen_arma_noise(ErrorModel::ar1(0.6), 100, 9));
  CHECK(gen_arma_noise(ErrorModel::ar1(0.6), 100, 9) != gen_arma_noise(ErrorModel::ar1(0.6), 100, 10));

  const ErrorModel m = ErrorModel::ar1(0.6, 1.0);
  const auto x = gen_arma_noise(m, 1'000'000, 60);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= x.size();
  const double gamma0 = autocovariance(m, 0)[0];
  CHECK(std::abs(var - gamma0) <= 0.01 * gamma0);

  // First draw already stationary: variance of e_0 across seeds.
  const ErrorModel strong = ErrorModel::arma11(0.95, 0.5, 1.0);
  double first = 0.0;
  for (std::uint64_t s = 0; s < 20000; ++s) first += std::pow(gen_arma_noise(strong, 1, s)[0], 2);
  CHECK(first / 20000 == doctest::Approx(autocovariance(strong, 0)[0]).epsilon(0.05));
}

TEST_CASE("noiseless round trip") {
  const auto data = gen_its_dataset(bt_spec(ErrorModel::iid(0.0), 1));
  CHECK(data.size() == 39);
  CHECK(data.first_period() == kReferenceStart);
  CHECK(data.last_period() == YearMonth{2021, 4});
  const FitResult fit = fit_ols(build_design(data, "y", InterventionSpec::for_dataset(data, kReferenceIntervention)));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(fit.beta[i] - bt().beta[i]) <= 1e-9 * std::max(1.0, std::abs(bt().beta[i])));
}

TEST_CASE("no intervention effect leaves one line") {
  SimulationSpec spec = generic(30, ErrorModel::iid(0.0), 1);
  spec.beta = {3.0, 1.5, 0.0, 0.0};
  const auto data = gen_its_dataset(spec);
  const auto y = data.series("y");
  for (std::size_t i = 1; i < y.size(); ++i) CHECK(y[i] - y[i - 1] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("simulation spec validation and determinism") {
  SimulationSpec bad = generic(30, ErrorModel::iid(), 1);
  bad.intervention_index = 1;
  CHECK_THROWS_AS(gen_its_dataset(bad), Error);
  bad.intervention_index = 31;
  CHECK_THROWS_AS(gen_its_dataset(bad), Error);

  const SimulationSpec spec = generic(39, ErrorModel::arma11(0.4, 0.2), 1);
  const auto a = gen_its_dataset(spec);
  const auto b = gen_its_dataset(spec);
  CHECK(std::equal(a.series(0).begin(), a.series(0).end(), b.series(0).begin()));
}

TEST_CASE("level drop is detected at the reference signal-to-noise") {
  const double sd = reference_noise_sd(bt());
  const ErrorModel shape = ErrorModel::ar1(0.3);
  const ErrorModel error = ErrorModel::ar1(0.3, sd * sd / shape.variance_ratio());
  int detected = 0;
  for (int r = 0; r < 500; ++r) {
    const auto data = gen_its_dataset(bt_spec(error, replicate_seed(2020, static_cast<std::uint64_t>(r))));
    const auto design = build_design(data, "y", InterventionSpec::for_dataset(data, kReferenceIntervention));
    FitResult fit;
    try {
      fit = fit_gls_ml(design, ErrorKind::Ar1);
    } catch (const ConvergenceError& e) {
      fit = e.best();
    }
    if (fit.t_stats[2] < -2.0) ++detected;
  }
  MESSAGE("detected in " << detected << " of 500");
  CHECK(detected >= 450);
}

TEST_CASE("reference noise scale reproduces the published time t-statistic") {
  for (const auto& ref : kReferenceSeries) {
    const double sd = reference_noise_sd(ref);
    double se2 = 0.0;
    constexpr int reps = 400;
    for (int r = 0; r < reps; ++r) {
      SimulationSpec spec = bt_spec(ErrorModel::iid(sd * sd), replicate_seed(404, static_cast<std::uint64_t>(r)));
      spec.beta = ref.beta;
      const auto data = gen_its_dataset(spec);
      const FitResult fit = fit_ols(build_design(data, "y", spec.intervention()));
      se2 += fit.se[1] * fit.se[1];
    }
    CHECK(std::sqrt(se2 / reps) == doctest::Approx(std::abs(ref.beta[1] / ref.t_stats[1])).epsilon(0.03));
  }
}

TEST_CASE("reference dataset layout") {
  const auto data = gen_reference_dataset(20200302);
  CHECK(data.size() == 39);
  CHECK(data.series_count() == 5);
  CHECK(data.labels() == std::vector<std::string>{"BJ", "BLJ", "BT", "TKB90", "TWP90"});
  CHECK(data.first_period() == YearMonth{2018, 2});
  CHECK(data.last_period() == YearMonth{2021, 4});
  const auto again = gen_reference_dataset(20200302);
  for (std::size_t s = 0; s < 5; ++s)
    CHECK(std::equal(data.series(s).begin(), data.series(s).end(), again.series(s).begin()));
  const auto other = gen_reference_dataset(20200302, ErrorKind::Ar1, 0.4);
  CHECK_FALSE(std::equal(data.series(0).begin(), data.series(0).end(), other.series(0).begin()));
}

TEST_CASE("coverage of OLS intervals under iid errors") {
  const auto c = monte_carlo_coverage(generic(200, ErrorModel::iid(), 1000));
  CHECK(c.replicates == 1000);
  for (double v : c.coverage) {
    CHECK(v >= 0.93);
    CHECK(v <= 0.97);
  }
}

TEST_CASE("naive OLS undercovers under positive autocorrelation") {
  const auto c = monte_carlo_coverage(generic(39, ErrorModel::ar1(0.6), 1000));
  MESSAGE("beta1 coverage " << c.coverage[1]);
  CHECK(c.coverage[1] < 0.93);
}

TEST_CASE("GLS-ML intervals under AR1 errors") {
  CoverageOptions options;
  options.method = FitMethod::GlsMl;
  const auto c = monte_carlo_coverage(generic(200, ErrorModel::ar1(0.6), 500), options);
  for (double v : c.coverage) {
    CHECK(v >= 0.91);
    CHECK(v <= 0.98);
  }
}

TEST_CASE("coverage does not depend on the thread count") {
  CoverageOptions one, many;
  one.threads = 1;
  many.threads = 7;
  one.method = many.method = FitMethod::GlsMl;
  const SimulationSpec spec = generic(39, ErrorModel::arma11(0.5, 0.2), 200);
  const auto a = monte_carlo_coverage(spec, one);
  const auto b = monte_carlo_coverage(spec, many);
  CHECK(a.coverage == b.coverage);
  CHECK(a.unconverged == b.unconverged);

  CHECK_THROWS_AS(monte_carlo_coverage(generic(39, ErrorModel::iid(), 199)), Error);
}

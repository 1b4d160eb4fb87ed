#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "its/calendar.hpp"
#include "its/design.hpp"
#include "its/error_models.hpp"
#include "its/estimation.hpp"

namespace its {

// Standard normal draws from a seeded std::mt19937_64 via Box-Muller. Both
// the engine and the transform are fully specified, so streams are identical
// across platforms and standard libraries.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept;  // in (0, 1]
  double next() noexcept;

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Replicate r of a study seeded with `seed` draws from seed XOR r.
constexpr std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate) noexcept {
  return seed ^ replicate;
}

inline constexpr int kBurnIn = 500;

// Stationary ARMA draw: the initial (e, a) pair comes from the stationary
// joint distribution and a further kBurnIn steps are discarded.
std::vector<double> gen_arma_noise(const ErrorModel& model, int n, std::uint64_t seed);

struct SimulationSpec {
  int n = 39;
  int intervention_index = 26;  // T at the intervention month, 1-based
  Coefficients beta{};
  ErrorModel error = ErrorModel::iid();
  std::uint64_t seed = 0;
  int replicates = 1;
  YearMonth start{2018, 2};
  std::string label = "y";

  void validate() const;  // throws ErrorCode::Config
  InterventionSpec intervention() const;
};

// y = beta0 + beta1 T + beta2 X + beta3 X S + e with noise seeded by spec.seed.
TimeSeriesDataset gen_its_dataset(const SimulationSpec& spec);

struct CoverageOptions {
  double level = 0.95;
  FitMethod method = FitMethod::Ols;  // Ols or GlsMl
  ErrorKind ml_kind = ErrorKind::Ar1;
  unsigned threads = 0;  // 0: hardware concurrency
};

inline constexpr int kMinCoverageReplicates = 200;

struct CoverageResult {
  Coefficients coverage{};
  int replicates = 0;
  int unconverged = 0;  // ML fits that hit the iteration cap (best iterate used)
};

// Fraction of replicates whose beta_hat +/- t_{df,(1+level)/2} se contains
// the true coefficient. Replicates run in parallel; results do not depend on
// the thread count.
CoverageResult monte_carlo_coverage(const SimulationSpec& spec, const CoverageOptions& options = {});

// Published segmented-regression coefficients and t-statistics for the five
// lending series, used as simulation truth.
struct ReferenceSeries {
  std::string_view label;
  std::string_view unit;
  Coefficients beta;
  Coefficients t_stats;
};
extern const std::array<ReferenceSeries, 5> kReferenceSeries;
inline constexpr YearMonth kReferenceStart{2018, 2};
inline constexpr YearMonth kReferenceIntervention{2020, 3};
inline constexpr int kReferenceLength = 39;
inline constexpr int kReferenceInterventionIndex = 26;

// Marginal noise sd that makes the OLS standard error of beta1 on the
// reference design equal beta1 / t1.
double reference_noise_sd(const ReferenceSeries& series);

// Five-series, 39-month synthetic dataset (2018-02..2021-04) with reference
// coefficients and noise at the reference t-scale. phi/theta are ignored for
// kinds that do not use them.
TimeSeriesDataset gen_reference_dataset(std::uint64_t seed, ErrorKind kind = ErrorKind::Iid,
                                        double phi = 0.0, double theta = 0.0);

}  // namespace its

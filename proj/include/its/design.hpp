#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "its/calendar.hpp"

namespace its {

// Monthly observations of one or more outcome series on a common, gap-free
// calendar. Immutable once constructed; the constructor enforces the
// consecutive-month and finiteness invariants (ErrorCode::Data).
class TimeSeriesDataset {
 public:
  TimeSeriesDataset(std::vector<YearMonth> periods, std::vector<std::string> labels,
                    std::vector<std::vector<double>> values);
  TimeSeriesDataset(YearMonth start, std::vector<std::string> labels,
                    std::vector<std::vector<double>> values);

  std::size_t size() const noexcept { return periods_.size(); }
  std::size_t series_count() const noexcept { return labels_.size(); }
  const std::vector<YearMonth>& periods() const noexcept { return periods_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  YearMonth first_period() const { return periods_.front(); }
  YearMonth last_period() const { return periods_.back(); }

  bool has_series(std::string_view label) const noexcept;
  // Throws ErrorCode::Config naming the label when absent.
  std::span<const double> series(std::string_view label) const;
  std::span<const double> series(std::size_t i) const { return values_.at(i); }

 private:
  TimeSeriesDataset(std::vector<YearMonth> periods, std::vector<std::string> labels,
                    std::vector<std::vector<double>> values, int /*unchecked*/)
      : periods_(std::move(periods)), labels_(std::move(labels)), values_(std::move(values)) {}
  void validate() const;

  std::vector<YearMonth> periods_;
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> values_;
};

// (T, X, S) for one period: running time, post-intervention dummy and the
// time-since-intervention clock (S = 1 at the intervention month).
struct TimeIndex {
  int time = 0;
  int dummy = 0;
  int since = 0;

  friend bool operator==(const TimeIndex&, const TimeIndex&) = default;
};

// Where the intervention falls and how the time axis is coded.
//
// T = 1 at `time_origin` and increases by one per month. The interaction
// column uses S = T - post_clock_start in post periods, which must be 1 at
// the intervention month, so post_clock_start defaults to T(intervention) - 1.
class InterventionSpec {
 public:
  InterventionSpec(YearMonth intervention, YearMonth time_origin,
                   std::optional<int> post_clock_start = std::nullopt);

  // Origin defaults to the dataset's first period. Throws
  // ErrorCode::InterventionRange if the intervention is outside the data.
  static InterventionSpec for_dataset(const TimeSeriesDataset& data, YearMonth intervention,
                                      std::optional<YearMonth> time_origin = std::nullopt);

  YearMonth intervention() const noexcept { return intervention_; }
  YearMonth time_origin() const noexcept { return origin_; }
  int post_clock_start() const noexcept { return post_clock_start_; }

  TimeIndex encode(YearMonth period) const noexcept;

 private:
  YearMonth intervention_;
  YearMonth origin_;
  int post_clock_start_;
};

std::vector<TimeIndex> encode_time_index(const TimeSeriesDataset& data, const InterventionSpec& spec);

inline constexpr int kMinSegmentLength = 4;
inline constexpr int kDesignColumns = 4;

// n x 4 segmented-regression design: [1, T, X, X*S] with the chosen response.
struct SegmentedDesign {
  std::string series;
  std::vector<YearMonth> periods;
  std::vector<TimeIndex> index;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  int pre_count = 0;
  int post_count = 0;

  int n() const noexcept { return static_cast<int>(y.size()); }
};

// Throws ErrorCode::InsufficientData when either segment has fewer than
// kMinSegmentLength observations.
SegmentedDesign build_design(const TimeSeriesDataset& data, std::string_view series,
                             const InterventionSpec& spec);

}  // namespace its

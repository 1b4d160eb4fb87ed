#include "its/design.hpp"

#include <algorithm>
#include <cmath>

#include "its/error.hpp"

namespace its {

TimeSeriesDataset::TimeSeriesDataset(std::vector<YearMonth> periods, std::vector<std::string> labels,
                                     std::vector<std::vector<double>> values)
    : periods_(std::move(periods)), labels_(std::move(labels)), values_(std::move(values)) {
  validate();
}

void TimeSeriesDataset::validate() const {
  if (periods_.empty()) throw Error(ErrorCode::Data, "dataset has no observations");
  if (labels_.size() != values_.size())
    throw Error(ErrorCode::Data, "series label count does not match value columns");
  for (std::size_t i = 1; i < periods_.size(); ++i) {
    if (periods_[i] != periods_[i - 1] + 1) {
      if (periods_[i] > periods_[i - 1] + 1)
        throw Error(ErrorCode::Data, "gap in months: " + (periods_[i - 1] + 1).to_string() +
                                         " missing between " + periods_[i - 1].to_string() + " and " +
                                         periods_[i].to_string());
      throw Error(ErrorCode::Data, "periods not strictly increasing at " + periods_[i].to_string());
    }
  }
  for (std::size_t s = 0; s < labels_.size(); ++s) {
    if (values_[s].size() != periods_.size())
      throw Error(ErrorCode::Data, "series '" + labels_[s] + "' has " +
                                       std::to_string(values_[s].size()) + " values for " +
                                       std::to_string(periods_.size()) + " periods");
    for (std::size_t i = 0; i < periods_.size(); ++i)
      if (!std::isfinite(values_[s][i]))
        throw Error(ErrorCode::Data,
                    "non-finite value in '" + labels_[s] + "' at " + periods_[i].to_string());
    if (std::count(labels_.begin(), labels_.end(), labels_[s]) > 1)
      throw Error(ErrorCode::Data, "duplicate series label '" + labels_[s] + "'");
  }
}

namespace {
std::vector<YearMonth> consecutive(YearMonth start, std::size_t n) {
  std::vector<YearMonth> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(start + static_cast<long>(i));
  return out;
}
}  // namespace

TimeSeriesDataset::TimeSeriesDataset(YearMonth start, std::vector<std::string> labels,
                                     std::vector<std::vector<double>> values)
    : TimeSeriesDataset(std::vector<YearMonth>{}, {}, {}, 0) {
  periods_ = consecutive(start, values.empty() ? 0 : values.front().size());
  labels_ = std::move(labels);
  values_ = std::move(values);
  validate();
}

bool TimeSeriesDataset::has_series(std::string_view label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::span<const double> TimeSeriesDataset::series(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorCode::Config, "no such series: '" + std::string(label) + "'");
  return values_[static_cast<std::size_t>(it - labels_.begin())];
}

InterventionSpec::InterventionSpec(YearMonth intervention, YearMonth time_origin,
                                   std::optional<int> post_clock_start)
    : intervention_(intervention), origin_(time_origin) {
  if (intervention < time_origin)
    throw Error(ErrorCode::InterventionRange, "intervention " + intervention.to_string() +
                                                  " precedes time origin " + time_origin.to_string());
  const int t_intervention = static_cast<int>(months_between(origin_, intervention_)) + 1;
  post_clock_start_ = post_clock_start.value_or(t_intervention - 1);
  if (t_intervention - post_clock_start_ != 1)
    throw Error(ErrorCode::Config, "post_clock_start " + std::to_string(post_clock_start_) +
                                       " does not give S = 1 at the intervention (expected " +
                                       std::to_string(t_intervention - 1) + ")");
}

InterventionSpec InterventionSpec::for_dataset(const TimeSeriesDataset& data, YearMonth intervention,
                                               std::optional<YearMonth> time_origin) {
  if (intervention < data.first_period() || intervention > data.last_period())
    throw Error(ErrorCode::InterventionRange,
                "intervention " + intervention.to_string() + " outside data range " +
                    data.first_period().to_string() + ".." + data.last_period().to_string());
  return InterventionSpec(intervention, time_origin.value_or(data.first_period()));
}

TimeIndex InterventionSpec::encode(YearMonth period) const noexcept {
  TimeIndex ti;
  ti.time = static_cast<int>(months_between(origin_, period)) + 1;
  ti.dummy = period >= intervention_ ? 1 : 0;
  ti.since = ti.dummy ? ti.time - post_clock_start_ : 0;
  return ti;
}

std::vector<TimeIndex> encode_time_index(const TimeSeriesDataset& data, const InterventionSpec& spec) {
  if (spec.intervention() < data.first_period() || spec.intervention() > data.last_period())
    throw Error(ErrorCode::InterventionRange,
                "intervention " + spec.intervention().to_string() + " outside data range " +
                    data.first_period().to_string() + ".." + data.last_period().to_string());
  std::vector<TimeIndex> out;
  out.reserve(data.size());
  for (YearMonth p : data.periods()) out.push_back(spec.encode(p));
  return out;
}

SegmentedDesign build_design(const TimeSeriesDataset& data, std::string_view series,
                             const InterventionSpec& spec) {
  std::span<const double> response = data.series(series);
  SegmentedDesign d;
  d.series = std::string(series);
  d.periods = data.periods();
  d.index = encode_time_index(data, spec);
  const int n = static_cast<int>(data.size());
  for (const TimeIndex& ti : d.index) (ti.dummy ? d.post_count : d.pre_count)++;
  if (d.pre_count < kMinSegmentLength || d.post_count < kMinSegmentLength)
    throw Error(ErrorCode::InsufficientData,
                "need at least " + std::to_string(kMinSegmentLength) +
                    " observations on each side of the intervention, got " +
                    std::to_string(d.pre_count) + " pre and " + std::to_string(d.post_count) + " post");
  d.X.resize(n, kDesignColumns);
  d.y.resize(n);
  for (int i = 0; i < n; ++i) {
    const TimeIndex& ti = d.index[static_cast<std::size_t>(i)];
    d.X(i, 0) = 1.0;
    d.X(i, 1) = ti.time;
    d.X(i, 2) = ti.dummy;
    d.X(i, 3) = ti.dummy * ti.since;
    d.y(i) = response[static_cast<std::size_t>(i)];
  }
  return d;
}

}  // namespace its

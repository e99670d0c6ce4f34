#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elpath/ingest.hpp"
#include "elpath/interpolate.hpp"
#include "elpath/timeseries.hpp"

namespace elpath {

/// Pearson correlation coefficient, clamped into [-1, 1] against rounding
/// overshoot. Requires equal lengths, n >= 3 and nonzero variance on both
/// sides.
double pearson(std::span<const double> a, std::span<const double> b);

/// Correlation of one factor at one path sample against the arrival-time
/// deviation. Cells with too few pairs or degenerate variance carry
/// defined = false plus a reason instead of an r.
struct ProfileCell {
  std::size_t sample_index = 0;
  MeteoFactor factor = MeteoFactor::Temperature;
  bool defined = false;
  double r = 0.0;
  std::size_t n_pairs = 0;
  std::string reason;  // empty when defined

  bool operator==(const ProfileCell&) const = default;
};

struct CorrelationProfile {
  std::vector<ProfileCell> cells;  // sample-major, factor order within sample

  bool operator==(const CorrelationProfile&) const = default;

  const ProfileCell* find(std::size_t sample_index, MeteoFactor factor) const;
};

/// Pairs the deviation series with each field estimate on shared timestamps
/// (pairwise deletion) and fills one cell per (sample, factor). Throws a
/// correlation error when not a single cell is defined.
CorrelationProfile correlation_profile(const TimeSeries& dtoa,
                                       std::span<const FieldEstimate> fields,
                                       unsigned threads = 1);

/// Per-factor aggregation of the defined cells across path samples.
struct FactorSummary {
  MeteoFactor factor = MeteoFactor::Temperature;
  std::size_t n_points = 0;       // defined cells
  double mean_r = 0.0;            // meaningful when n_points >= 1
  std::optional<double> std_r;    // absent when n_points < 2

  bool operator==(const FactorSummary&) const = default;
};

struct ProfileSummary {
  std::vector<FactorSummary> factors;  // kAllFactors order, present factors only

  bool operator==(const ProfileSummary&) const = default;
};

/// population_std selects the 1/n estimator; false selects 1/(n-1).
ProfileSummary summarize(const CorrelationProfile& profile,
                         bool population_std = true);

}  // namespace elpath

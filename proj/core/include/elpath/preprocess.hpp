#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "elpath/timeseries.hpp"

namespace elpath {

/// Drops samples flagged by a scaled-MAD rule: |x − median| > k · 1.4826 · MAD.
/// When MAD is zero (at least half the samples sit on the median) the rule is
/// blind, so a Tukey fence on type-7 quartiles takes over:
/// keep x ∈ [Q1 − 1.5·IQR, Q3 + 1.5·IQR]. Samples on the median always
/// survive either rule, so the result is never empty.
TimeSeries remove_outliers(const TimeSeries& s, double k);

/// Subtracts the arithmetic mean of the whole series from every value.
TimeSeries demean(const TimeSeries& s);

/// Replaces each value with the mean of all samples whose timestamps fall in
/// [t − w/2, t + w/2] (centered, both ends inclusive) or (t − w, t]
/// (trailing). Output timestamps equal input timestamps.
TimeSeries moving_average(const TimeSeries& s, std::int64_t window_s,
                          bool centered = true);

/// Maps s onto the given timestamps by nearest neighbor: a grid point is
/// kept when s has a sample within `tolerance_s` (inclusive; ties take the
/// earlier sample), otherwise it is absent from the result.
TimeSeries snap_to_grid(const TimeSeries& s, std::span<const UtcSeconds> grid,
                        std::int64_t tolerance_s);

/// Resamples every series onto one shared grid stepping from the latest
/// start time to the earliest end time. A grid point survives only if every
/// series has a sample within step/2 (inclusive; ties take the earlier
/// sample). An empty result raises an alignment error naming the series with
/// the least coverage, using `labels` when provided.
std::vector<TimeSeries> align(std::span<const TimeSeries> series,
                              std::int64_t step_s,
                              std::span<const std::string> labels = {});

/// The fixed arrival-time preprocessing chain: remove_outliers, then demean,
/// then moving_average.
TimeSeries delta_toa(const TimeSeries& toa, double outlier_k,
                     std::int64_t ma_window_s, bool centered = true);

}  // namespace elpath

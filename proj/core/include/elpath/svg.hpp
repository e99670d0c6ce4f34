#pragma once

#include <filesystem>
#include <span>

#include "elpath/correlate.hpp"
#include "elpath/interpolate.hpp"
#include "elpath/timeseries.hpp"

namespace elpath {

/// Time trace of the arrival-time deviation, hours on the x axis.
void write_dtoa_svg(const std::filesystem::path& file, const TimeSeries& dtoa);

/// One scatter panel per factor at a single path sample: factor estimate on
/// x, deviation on y, the cell's r in the panel title. The subtitle names
/// the sample and flags the transmitter/receiver endpoints.
void write_scatter_svg(const std::filesystem::path& file,
                       const TimeSeries& dtoa,
                       std::span<const FieldEstimate> fields_at_sample,
                       const CorrelationProfile& profile,
                       std::size_t sample_index, std::size_t n_samples);

/// Correlation coefficient against path-sample index, one polyline per
/// factor; undefined cells break the line.
void write_profile_svg(const std::filesystem::path& file,
                       const CorrelationProfile& profile);

}  // namespace elpath

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elpath/config.hpp"
#include "elpath/geodesy.hpp"
#include "elpath/ingest.hpp"
#include "elpath/timeseries.hpp"

namespace elpath {

/// One meteorological factor estimated at one path sample. The series lives
/// on the shared analysis grid; grid timestamps where no station reported
/// the factor are absent and counted in gap_count.
struct FieldEstimate {
  std::size_t sample_index = 0;  // 1-based, matches PathSample::index
  MeteoFactor factor = MeteoFactor::Temperature;
  TimeSeries series;
  std::size_t gap_count = 0;
};

struct Observation {
  GeoPoint location;
  double value = 0.0;
};

/// Inverse-distance weighting over precomputed distances in meters:
/// sum(z_i / d_i^p) / sum(1 / d_i^p). Any station closer than 1 m wins
/// outright — the weight diverges there, so its value is returned exactly.
double idw_from_distances(std::span<const double> distances_m,
                          std::span<const double> values, double power);

/// Same estimate with distances taken as great-circle distances from target.
double idw_interpolate(const GeoPoint& target,
                       std::span<const Observation> observations, double power,
                       double earth_radius_m = kDefaultEarthRadiusM);

/// Estimates every factor at every path sample on the shared grid. Stations
/// must already be snapped onto `grid`; at each timestamp only stations with
/// a value there contribute. A factor no station reports at all is dropped
/// with a warning; timestamps nobody covers become gaps.
std::vector<FieldEstimate> interpolate_fields(
    std::span<const PathSample> path,
    std::span<const StationRecordSet> stations,
    std::span<const UtcSeconds> grid, const RunConfig& cfg,
    std::vector<std::string>* warnings = nullptr, unsigned threads = 1);

}  // namespace elpath

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "elpath/config.hpp"
#include "elpath/correlate.hpp"
#include "elpath/geodesy.hpp"

namespace elpath {

struct StationRosterEntry {
  std::string station_id;
  GeoPoint location;
  double min_distance_to_path_m = 0.0;
  bool used = false;  // false when the distance cutoff excluded it

  bool operator==(const StationRosterEntry&) const = default;
};

/// Full record of one analysis run. Serializes to JSON and parses back
/// losslessly (to_json_text ∘ from_json_text is the identity), so reports
/// can be diffed and regression-checked as files.
struct RunReport {
  RunConfig config;
  double path_length_m = 0.0;
  std::vector<StationRosterEntry> roster;
  // Per-stage record accounting, in pipeline order (e.g. toa_rows_read,
  // toa_outliers_removed, grid_points, field_gaps, profile_cells_defined).
  std::vector<std::pair<std::string, std::int64_t>> counts;
  CorrelationProfile profile;
  ProfileSummary summary;
  std::vector<std::string> warnings;

  bool operator==(const RunReport&) const = default;

  std::string to_json_text() const;
  static RunReport from_json_text(const std::string& text);
};

}  // namespace elpath

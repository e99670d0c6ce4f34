#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "elpath/geodesy.hpp"

namespace elpath {

/// Flat `key = value` file with `#` comments. Dotted keys express
/// structure (e.g. `station.3.lat`). Duplicate keys are a config error.
using KeyValueMap = std::map<std::string, std::string>;

KeyValueMap parse_key_value_file(const std::filesystem::path& path);

/// Analysis-run parameters. Every field has a config key of the same
/// name (tx/rx as tx_lat, tx_lon, rx_lat, rx_lon); unknown keys are
/// rejected so typos fail fast.
struct RunConfig {
  GeoPoint tx;                            // required: tx_lat, tx_lon
  GeoPoint rx;                            // required: rx_lat, rx_lon
  int n_samples = 50;                     // path sampling points, >= 2
  double idw_power = 2.0;                 // IDW weighting exponent, > 0
  double station_max_distance_m = 30000;  // station-to-path eligibility cutoff
  std::int64_t ma_window_s = 3600;        // moving-average window
  bool ma_centered = true;                // centered window; false = trailing
  double outlier_k = 5.0;                 // scaled-MAD multiplier
  std::int64_t resample_step_s = 3600;    // common grid step
  double earth_radius_m = kDefaultEarthRadiusM;
  bool population_std = true;             // key summary_std = population|sample

  bool operator==(const RunConfig&) const = default;

  static RunConfig from_file(const std::filesystem::path& path);
  static RunConfig from_map(const KeyValueMap& map);

  /// Throws ErrorKind::Config when any field violates its range.
  void validate() const;
};

}  // namespace elpath

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elpath/config.hpp"
#include "elpath/geodesy.hpp"
#include "elpath/timeseries.hpp"

namespace elpath {

/// The six observed quantities, in the fixed reporting order.
/// Temperature is stored in kelvin (converted from the file's Celsius
/// column); cloud amount is a unit pass-through.
enum class MeteoFactor {
  Temperature,
  Humidity,
  Pressure,
  VaporPressure,
  Visibility,
  CloudAmount,
};

inline constexpr std::array<MeteoFactor, 6> kAllFactors{
    MeteoFactor::Temperature,   MeteoFactor::Humidity,
    MeteoFactor::Pressure,      MeteoFactor::VaporPressure,
    MeteoFactor::Visibility,    MeteoFactor::CloudAmount,
};

std::string_view factor_name(MeteoFactor f);            // "temperature", ...
std::string_view factor_csv_column(MeteoFactor f);      // "temperature_c", ...
std::optional<MeteoFactor> factor_from_name(std::string_view name);

/// One TOA measurement row.
struct ToaRecord {
  UtcSeconds timestamp = 0;
  double toa_us = 0.0;
};

/// All observations from one weather station. Factors whose column was
/// entirely blank are absent from `series`.
struct StationRecordSet {
  std::string station_id;
  GeoPoint location;
  std::map<MeteoFactor, TimeSeries> series;
};

struct StationMeta {
  std::string station_id;
  GeoPoint location;
};

/// Reads `timestamp,toa_us` rows, sorts by timestamp, rejects duplicates.
std::vector<ToaRecord> read_toa_csv(const std::filesystem::path& path);

void write_toa_csv(const std::filesystem::path& path,
                   std::span<const ToaRecord> records);

/// Reads one station observation file
/// (`timestamp,temperature_c,humidity_pct,pressure_hpa,vapor_pressure_hpa,visibility_m,cloud_amount`).
/// Blank cells become gaps; temperature is converted to kelvin.
StationRecordSet read_station_csv(const std::filesystem::path& path,
                                  const StationMeta& meta,
                                  std::vector<std::string>* warnings = nullptr);

void write_station_csv(const std::filesystem::path& path,
                       const StationRecordSet& station);

/// Reads the `station_id,lat,lon` metadata file.
std::vector<StationMeta> read_station_metadata(const std::filesystem::path& path);

void write_station_metadata(const std::filesystem::path& path,
                            std::span<const StationMeta> stations);

/// Loads `stations.csv` plus one `<station_id>.csv` per metadata row from
/// `dir`. A data file without a metadata row, or vice versa, is a config
/// error.
std::vector<StationRecordSet> load_station_dir(
    const std::filesystem::path& dir,
    std::vector<std::string>* warnings = nullptr);

/// Keeps stations whose minimum great-circle distance to any path sample
/// is within `max_distance_m`; records a warning per excluded station.
std::vector<StationRecordSet> filter_stations_by_path(
    std::vector<StationRecordSet> stations, std::span<const PathSample> path,
    double max_distance_m, double earth_radius_m = kDefaultEarthRadiusM,
    std::vector<std::string>* warnings = nullptr);

TimeSeries to_time_series(std::span<const ToaRecord> records);

}  // namespace elpath

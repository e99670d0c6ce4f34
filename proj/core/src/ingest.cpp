#include "elpath/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "elpath/csv.hpp"
#include "elpath/errors.hpp"

namespace elpath {

namespace {

constexpr double kCelsiusToKelvin = 273.15;

const std::array<std::string_view, 6> kFactorNames{
    "temperature", "humidity",   "pressure",
    "vapor_pressure", "visibility", "cloud_amount"};

const std::array<std::string_view, 6> kFactorColumns{
    "temperature_c", "humidity_pct", "pressure_hpa",
    "vapor_pressure_hpa", "visibility_m", "cloud_amount"};

std::string location(const std::filesystem::path& path, std::size_t line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

void expect_header(const CsvFile& file, std::span<const std::string_view> want,
                   const std::filesystem::path& path) {
  bool ok = file.header.size() == want.size();
  for (std::size_t i = 0; ok && i < want.size(); ++i) {
    ok = file.header[i] == want[i];
  }
  if (!ok) {
    std::string expected;
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (i) expected += ',';
      expected += want[i];
    }
    throw Error(ErrorKind::Parse, path.string() + ": expected header '" +
                                      expected + "'");
  }
}

}  // namespace

std::string_view factor_name(MeteoFactor f) {
  return kFactorNames[static_cast<std::size_t>(f)];
}

std::string_view factor_csv_column(MeteoFactor f) {
  return kFactorColumns[static_cast<std::size_t>(f)];
}

std::optional<MeteoFactor> factor_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFactorNames.size(); ++i) {
    if (kFactorNames[i] == name) return static_cast<MeteoFactor>(i);
  }
  return std::nullopt;
}

std::vector<ToaRecord> read_toa_csv(const std::filesystem::path& path) {
  const CsvFile file = read_csv(path);
  static constexpr std::array<std::string_view, 2> header{"timestamp", "toa_us"};
  expect_header(file, header, path);

  std::vector<ToaRecord> records;
  records.reserve(file.rows.size());
  for (const auto& row : file.rows) {
    if (row.fields.size() != 2) {
      throw Error(ErrorKind::Parse,
                  location(path, row.line_no) + ": expected 2 fields, got " +
                      std::to_string(row.fields.size()));
    }
    ToaRecord rec;
    try {
      rec.timestamp = parse_iso8601_utc(row.fields[0]);
      rec.toa_us = parse_double_field(row.fields[1], "toa_us");
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, location(path, row.line_no) + ": " + e.what());
    }
    if (!std::isfinite(rec.toa_us)) {
      throw Error(ErrorKind::Parse,
                  location(path, row.line_no) + ": toa_us is not finite");
    }
    records.push_back(rec);
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const ToaRecord& a, const ToaRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].timestamp == records[i - 1].timestamp) {
      throw Error(ErrorKind::Data,
                  path.string() + ": duplicate timestamp " +
                      format_iso8601_utc(records[i].timestamp));
    }
  }
  return records;
}

void write_toa_csv(const std::filesystem::path& path,
                   std::span<const ToaRecord> records) {
  CsvWriter out(path);
  out.write_row({"timestamp", "toa_us"});
  for (const auto& rec : records) {
    out.write_row({format_iso8601_utc(rec.timestamp), format_double(rec.toa_us)});
  }
}

StationRecordSet read_station_csv(const std::filesystem::path& path,
                                  const StationMeta& meta,
                                  std::vector<std::string>* warnings) {
  const CsvFile file = read_csv(path);
  std::array<std::string_view, 7> header;
  header[0] = "timestamp";
  for (std::size_t i = 0; i < kFactorColumns.size(); ++i) {
    header[i + 1] = kFactorColumns[i];
  }
  expect_header(file, header, path);

  struct Column {
    std::vector<UtcSeconds> timestamps;
    std::vector<double> values;
  };
  std::array<Column, 6> columns;

  UtcSeconds previous = std::numeric_limits<UtcSeconds>::min();
  bool first = true;
  for (const auto& row : file.rows) {
    if (row.fields.size() != 7) {
      throw Error(ErrorKind::Parse,
                  location(path, row.line_no) + ": expected 7 fields, got " +
                      std::to_string(row.fields.size()));
    }
    UtcSeconds t;
    try {
      t = parse_iso8601_utc(row.fields[0]);
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, location(path, row.line_no) + ": " + e.what());
    }
    if (!first && t <= previous) {
      throw Error(ErrorKind::Data,
                  location(path, row.line_no) +
                      ": timestamps not strictly increasing");
    }
    previous = t;
    first = false;

    for (std::size_t f = 0; f < 6; ++f) {
      const std::string& cell = row.fields[f + 1];
      if (cell.empty()) continue;  // gap
      double value;
      try {
        value = parse_double_field(cell, std::string(kFactorColumns[f]));
      } catch (const Error& e) {
        throw Error(ErrorKind::Parse,
                    location(path, row.line_no) + ": " + e.what());
      }
      if (!std::isfinite(value)) {
        throw Error(ErrorKind::Parse,
                    location(path, row.line_no) + ": " +
                        std::string(kFactorColumns[f]) + " is not finite");
      }
      if (static_cast<MeteoFactor>(f) == MeteoFactor::Temperature) {
        value += kCelsiusToKelvin;
      }
      columns[f].timestamps.push_back(t);
      columns[f].values.push_back(value);
    }
  }

  StationRecordSet station;
  station.station_id = meta.station_id;
  station.location = meta.location;
  for (std::size_t f = 0; f < 6; ++f) {
    if (columns[f].timestamps.empty()) {
      if (warnings) {
        warnings->push_back("station " + meta.station_id + ": factor " +
                            std::string(kFactorNames[f]) +
                            " has no observations, omitted");
      }
      continue;
    }
    station.series.emplace(static_cast<MeteoFactor>(f),
                           TimeSeries(std::move(columns[f].timestamps),
                                      std::move(columns[f].values)));
  }
  return station;
}

void write_station_csv(const std::filesystem::path& path,
                       const StationRecordSet& station) {
  CsvWriter out(path);
  std::vector<std::string> header{"timestamp"};
  for (auto col : kFactorColumns) header.emplace_back(col);
  out.write_row(header);

  // Union of timestamps across factors, gaps written as empty cells.
  std::set<UtcSeconds> stamps;
  for (const auto& [factor, series] : station.series) {
    stamps.insert(series.timestamps().begin(), series.timestamps().end());
  }
  std::array<std::size_t, 6> cursor{};
  for (const UtcSeconds t : stamps) {
    std::vector<std::string> row{format_iso8601_utc(t)};
    for (std::size_t f = 0; f < 6; ++f) {
      const auto it = station.series.find(static_cast<MeteoFactor>(f));
      std::string cell;
      if (it != station.series.end()) {
        const TimeSeries& series = it->second;
        std::size_t& pos = cursor[f];
        if (pos < series.size() && series.timestamp(pos) == t) {
          double value = series.value(pos);
          if (static_cast<MeteoFactor>(f) == MeteoFactor::Temperature) {
            value -= kCelsiusToKelvin;
          }
          cell = format_double(value);
          ++pos;
        }
      }
      row.push_back(std::move(cell));
    }
    out.write_row(row);
  }
}

std::vector<StationMeta> read_station_metadata(
    const std::filesystem::path& path) {
  const CsvFile file = read_csv(path);
  static constexpr std::array<std::string_view, 3> header{"station_id", "lat",
                                                          "lon"};
  expect_header(file, header, path);

  std::vector<StationMeta> stations;
  std::set<std::string> seen;
  for (const auto& row : file.rows) {
    if (row.fields.size() != 3) {
      throw Error(ErrorKind::Parse,
                  location(path, row.line_no) + ": expected 3 fields, got " +
                      std::to_string(row.fields.size()));
    }
    if (row.fields[0].empty()) {
      throw Error(ErrorKind::Config,
                  location(path, row.line_no) + ": empty station_id");
    }
    if (!seen.insert(row.fields[0]).second) {
      throw Error(ErrorKind::Config,
                  location(path, row.line_no) + ": duplicate station_id '" +
                      row.fields[0] + "'");
    }
    StationMeta meta;
    meta.station_id = row.fields[0];
    try {
      meta.location = make_geo_point(parse_double_field(row.fields[1], "lat"),
                                     parse_double_field(row.fields[2], "lon"));
    } catch (const Error& e) {
      throw Error(ErrorKind::Config,
                  location(path, row.line_no) + ": " + e.what());
    }
    stations.push_back(std::move(meta));
  }
  return stations;
}

void write_station_metadata(const std::filesystem::path& path,
                            std::span<const StationMeta> stations) {
  CsvWriter out(path);
  out.write_row({"station_id", "lat", "lon"});
  for (const auto& meta : stations) {
    out.write_row({meta.station_id, format_double(meta.location.lat_deg),
                   format_double(meta.location.lon_deg)});
  }
}

std::vector<StationRecordSet> load_station_dir(
    const std::filesystem::path& dir, std::vector<std::string>* warnings) {
  const auto metadata_path = dir / "stations.csv";
  if (!std::filesystem::exists(metadata_path)) {
    throw Error(ErrorKind::Config,
                "missing station metadata file '" + metadata_path.string() + "'");
  }
  const auto metadata = read_station_metadata(metadata_path);
  if (metadata.empty()) {
    throw Error(ErrorKind::Config,
                metadata_path.string() + ": no stations listed");
  }

  std::vector<StationRecordSet> stations;
  stations.reserve(metadata.size());
  for (const auto& meta : metadata) {
    const auto data_path = dir / (meta.station_id + ".csv");
    if (!std::filesystem::exists(data_path)) {
      throw Error(ErrorKind::Config, "station '" + meta.station_id +
                                         "' listed in metadata but '" +
                                         data_path.string() + "' is missing");
    }
    stations.push_back(read_station_csv(data_path, meta, warnings));
  }

  // A data file for an unlisted station means the metadata is incomplete.
  std::set<std::string> listed;
  for (const auto& meta : metadata) listed.insert(meta.station_id + ".csv");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name == "stations.csv" || !name.ends_with(".csv")) continue;
    if (!listed.contains(name)) {
      throw Error(ErrorKind::Config,
                  "station data file '" + entry.path().string() +
                      "' has no metadata row in stations.csv");
    }
  }
  return stations;
}

std::vector<StationRecordSet> filter_stations_by_path(
    std::vector<StationRecordSet> stations, std::span<const PathSample> path,
    double max_distance_m, double earth_radius_m,
    std::vector<std::string>* warnings) {
  std::vector<StationRecordSet> kept;
  kept.reserve(stations.size());
  for (auto& station : stations) {
    double min_distance = std::numeric_limits<double>::infinity();
    for (const auto& sample : path) {
      min_distance = std::min(
          min_distance,
          great_circle_distance(station.location, sample.point, earth_radius_m));
    }
    if (min_distance <= max_distance_m) {
      kept.push_back(std::move(station));
    } else if (warnings) {
      warnings->push_back(
          "station " + station.station_id + " excluded: " +
          format_double(std::round(min_distance)) +
          " m from the path exceeds the " + format_double(max_distance_m) +
          " m limit");
    }
  }
  return kept;
}

TimeSeries to_time_series(std::span<const ToaRecord> records) {
  std::vector<UtcSeconds> timestamps;
  std::vector<double> values;
  timestamps.reserve(records.size());
  values.reserve(records.size());
  for (const auto& rec : records) {
    timestamps.push_back(rec.timestamp);
    values.push_back(rec.toa_us);
  }
  return TimeSeries(std::move(timestamps), std::move(values));
}

}  // namespace elpath

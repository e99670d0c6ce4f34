#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "elpath/errors.hpp"
#include "elpath/geodesy.hpp"
#include "elpath/ingest.hpp"
#include "support.hpp"

using namespace elpath;
using testutil::TempDir;

namespace {

const std::string kStationHeader =
    "timestamp,temperature_c,humidity_pct,pressure_hpa,vapor_pressure_hpa,"
    "visibility_m,cloud_amount\n";

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected an elpath error");
}

}  // namespace

TEST_SUITE_BEGIN("ingest");

TEST_CASE("factor names and columns line up") {
  CHECK(factor_name(MeteoFactor::Temperature) == "temperature");
  CHECK(factor_csv_column(MeteoFactor::Temperature) == "temperature_c");
  CHECK(factor_name(MeteoFactor::VaporPressure) == "vapor_pressure");
  CHECK(factor_csv_column(MeteoFactor::CloudAmount) == "cloud_amount");
  CHECK(factor_from_name("humidity") == MeteoFactor::Humidity);
  CHECK(factor_from_name("visibility") == MeteoFactor::Visibility);
  CHECK_FALSE(factor_from_name("wind_speed").has_value());
  CHECK(kAllFactors.size() == 6);
}

TEST_CASE("arrival-time rows are sorted on read") {
  TempDir dir;
  const auto path = dir / "toa.csv";
  testutil::write_file(path,
                       "timestamp,toa_us\n"
                       "2013-01-11T02:00:00Z,757.48\n"
                       "2013-01-11T00:00:00Z,757.38\n"
                       "2013-01-11T01:00:00Z,757.42\n");
  const auto records = read_toa_csv(path);
  REQUIRE(records.size() == 3);
  CHECK(records[0].timestamp == 1357862400);
  CHECK(records[0].toa_us == 757.38);
  CHECK(records[1].toa_us == 757.42);
  CHECK(records[2].toa_us == 757.48);
}

TEST_CASE("a header-only arrival-time file yields an empty list") {
  TempDir dir;
  const auto path = dir / "toa.csv";
  testutil::write_file(path, "timestamp,toa_us\n");
  CHECK(read_toa_csv(path).empty());
}

TEST_CASE("arrival-time parse failures name the file and line") {
  TempDir dir;
  const auto path = dir / "toa.csv";
  testutil::write_file(path,
                       "timestamp,toa_us\n"
                       "2013-01-11T00:00:00Z,757.38\n"
                       "2013-01-11T01:00:00Z,not-a-number\n");
  try {
    read_toa_csv(path);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    const std::string what = e.what();
    CHECK(what.find("toa.csv") != std::string::npos);
    CHECK(what.find("3") != std::string::npos);  // failing line number
  }
}

TEST_CASE("arrival-time contract violations are data errors") {
  TempDir dir;
  const auto dup = dir / "dup.csv";
  testutil::write_file(dup,
                       "timestamp,toa_us\n"
                       "2013-01-11T00:00:00Z,757.38\n"
                       "2013-01-11T00:00:00Z,757.39\n");
  CHECK(kind_of([&] { read_toa_csv(dup); }) == ErrorKind::Data);

  const auto header = dir / "header.csv";
  testutil::write_file(header, "time,toa\n");
  CHECK(kind_of([&] { read_toa_csv(header); }) == ErrorKind::Parse);

  const auto inf = dir / "inf.csv";
  testutil::write_file(inf, "timestamp,toa_us\n2013-01-11T00:00:00Z,inf\n");
  CHECK(kind_of([&] { read_toa_csv(inf); }) == ErrorKind::Parse);
}

TEST_CASE("arrival-time files round-trip losslessly") {
  TempDir dir;
  const std::vector<ToaRecord> records{{1357862400, 757.3812345678901},
                                       {1357866000, 757.0},
                                       {1357869600, -0.125}};
  const auto path = dir / "toa.csv";
  write_toa_csv(path, records);
  const auto back = read_toa_csv(path);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].timestamp == records[i].timestamp);
    CHECK(back[i].toa_us == records[i].toa_us);  // bit-exact
  }
}

TEST_CASE("temperature cells convert from Celsius to kelvin") {
  TempDir dir;
  const auto path = dir / "S01.csv";
  testutil::write_file(path, kStationHeader +
                                 "2013-01-11T00:00:00Z,15.0,70,1013.25,10,9000,4\n");
  const StationMeta meta{"S01", make_geo_point(35.14, 126.87)};
  const auto station = read_station_csv(path, meta);
  CHECK(station.station_id == "S01");
  CHECK(station.location == meta.location);
  REQUIRE(station.series.contains(MeteoFactor::Temperature));
  CHECK(station.series.at(MeteoFactor::Temperature).value(0) == 288.15);
  CHECK(station.series.at(MeteoFactor::Pressure).value(0) == 1013.25);
  CHECK(station.series.at(MeteoFactor::CloudAmount).value(0) == 4.0);
}

TEST_CASE("blank cells become gaps, not zeros") {
  TempDir dir;
  const auto path = dir / "S01.csv";
  testutil::write_file(path,
                       kStationHeader +
                           "2013-01-11T00:00:00Z,15.0,70,,10,9000,4\n"
                           "2013-01-11T01:00:00Z,14.5,,1013.0,,9500,5\n"
                           "2013-01-11T02:00:00Z,14.0,72,1012.5,11,,6\n");
  const StationMeta meta{"S01", make_geo_point(35.14, 126.87)};
  const auto station = read_station_csv(path, meta);
  CHECK(station.series.at(MeteoFactor::Temperature).size() == 3);
  CHECK(station.series.at(MeteoFactor::Humidity).size() == 2);
  CHECK(station.series.at(MeteoFactor::Pressure).size() == 2);
  CHECK(station.series.at(MeteoFactor::VaporPressure).size() == 2);
  CHECK(station.series.at(MeteoFactor::Visibility).size() == 2);
  // Gap positions: the series skips exactly the blank timestamps.
  CHECK(station.series.at(MeteoFactor::Humidity).timestamp(0) == 1357862400);
  CHECK(station.series.at(MeteoFactor::Humidity).timestamp(1) == 1357869600);
}

TEST_CASE("an all-blank column is omitted with a warning") {
  TempDir dir;
  const auto path = dir / "S02.csv";
  testutil::write_file(path,
                       kStationHeader +
                           "2013-01-11T00:00:00Z,15.0,70,1013.25,10,,4\n"
                           "2013-01-11T01:00:00Z,14.5,71,1013.0,10,,5\n");
  const StationMeta meta{"S02", make_geo_point(35.33, 126.81)};
  std::vector<std::string> warnings;
  const auto station = read_station_csv(path, meta, &warnings);
  CHECK_FALSE(station.series.contains(MeteoFactor::Visibility));
  CHECK(station.series.size() == 5);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("S02") != std::string::npos);
  CHECK(warnings[0].find("visibility") != std::string::npos);
}

TEST_CASE("station observation timestamps must strictly increase") {
  TempDir dir;
  const auto path = dir / "S03.csv";
  testutil::write_file(path,
                       kStationHeader +
                           "2013-01-11T01:00:00Z,15.0,70,1013.25,10,9000,4\n"
                           "2013-01-11T01:00:00Z,14.5,71,1013.0,10,9500,5\n");
  const StationMeta meta{"S03", make_geo_point(35.53, 126.93)};
  CHECK(kind_of([&] { read_station_csv(path, meta); }) == ErrorKind::Data);
}

TEST_CASE("station files round-trip bit-exactly including temperature") {
  TempDir dir;
  const auto path = dir / "S01.csv";
  // Values chosen with awkward decimals; kelvin conversion must not drift.
  testutil::write_file(path,
                       kStationHeader +
                           "2013-01-11T00:00:00Z,15.3,70.25,1013.25,10.125,9000,4\n"
                           "2013-01-11T01:00:00Z,-7.1,,1012.875,,8500,5\n"
                           "2013-01-11T02:00:00Z,0.05,72,,11.5,,\n");
  const StationMeta meta{"S01", make_geo_point(35.14, 126.87)};
  const auto first = read_station_csv(path, meta);

  const auto rewritten = dir / "S01-rt.csv";
  write_station_csv(rewritten, first);
  const auto second = read_station_csv(rewritten, meta);

  REQUIRE(first.series.size() == second.series.size());
  for (const auto& [factor, series] : first.series) {
    CAPTURE(factor_name(factor));
    REQUIRE(second.series.contains(factor));
    CHECK(second.series.at(factor) == series);  // TimeSeries == is bitwise
  }
}

TEST_CASE("metadata files parse, validate and round-trip") {
  TempDir dir;
  const auto path = dir / "stations.csv";
  testutil::write_file(path,
                       "station_id,lat,lon\n"
                       "S01,35.14,126.87\n"
                       "S02,35.33,126.81\n");
  const auto metas = read_station_metadata(path);
  REQUIRE(metas.size() == 2);
  CHECK(metas[0].station_id == "S01");
  CHECK(metas[1].location == GeoPoint{35.33, 126.81});

  const auto rewritten = dir / "rt.csv";
  write_station_metadata(rewritten, metas);
  const auto back = read_station_metadata(rewritten);
  REQUIRE(back.size() == 2);
  CHECK(back[0].station_id == metas[0].station_id);
  CHECK(back[0].location == metas[0].location);
  CHECK(back[1].location == metas[1].location);

  const auto dup = dir / "dup.csv";
  testutil::write_file(dup,
                       "station_id,lat,lon\nS01,35.14,126.87\nS01,35.33,126.81\n");
  CHECK(kind_of([&] { read_station_metadata(dup); }) == ErrorKind::Config);

  const auto bad_lat = dir / "lat.csv";
  testutil::write_file(bad_lat, "station_id,lat,lon\nS01,95.0,126.87\n");
  CHECK_THROWS_AS(read_station_metadata(bad_lat), Error);
}

TEST_CASE("a station directory must be internally consistent") {
  TempDir dir;
  const auto base = dir.path();

  // Missing stations.csv entirely.
  CHECK(kind_of([&] { load_station_dir(base); }) == ErrorKind::Config);

  // Listed station without a data file.
  testutil::write_file(base / "stations.csv",
                       "station_id,lat,lon\nS01,35.14,126.87\n");
  CHECK(kind_of([&] { load_station_dir(base); }) == ErrorKind::Config);

  // Consistent directory loads.
  testutil::write_file(base / "S01.csv",
                       kStationHeader +
                           "2013-01-11T00:00:00Z,15.0,70,1013.25,10,9000,4\n");
  const auto stations = load_station_dir(base);
  REQUIRE(stations.size() == 1);
  CHECK(stations[0].station_id == "S01");

  // A data file nobody listed means the metadata is stale.
  testutil::write_file(base / "S09.csv",
                       kStationHeader +
                           "2013-01-11T00:00:00Z,15.0,70,1013.25,10,9000,4\n");
  try {
    load_station_dir(base);
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("S09") != std::string::npos);
  }
}

TEST_CASE("stations beyond the distance cutoff are dropped with a warning") {
  const auto path = sample_path(make_geo_point(0, 0), make_geo_point(0, 1), 11);
  StationRecordSet near;
  near.station_id = "NEAR";
  near.location = make_geo_point(0.26, 0.5);  // ~28.9 km off the path
  StationRecordSet far;
  far.station_id = "FAR";
  far.location = make_geo_point(0.28, 0.5);  // ~31.1 km off the path

  std::vector<std::string> warnings;
  const auto kept = filter_stations_by_path({near, far}, path, 30000.0,
                                            kDefaultEarthRadiusM, &warnings);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].station_id == "NEAR");
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("FAR") != std::string::npos);
  CHECK(warnings[0].find("30000") != std::string::npos);
}

TEST_CASE("to_time_series carries timestamps and values over") {
  const std::vector<ToaRecord> records{{0, 1.5}, {3600, 2.5}};
  const TimeSeries s = to_time_series(records);
  CHECK(s == TimeSeries({0, 3600}, {1.5, 2.5}));
}

TEST_SUITE_END();

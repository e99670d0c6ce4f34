#include "elpath/report.hpp"

#include "json.hpp"

#include "elpath/errors.hpp"
#include "elpath/ingest.hpp"

namespace elpath {

namespace {

using Json = nlohmann::ordered_json;

Json config_to_json(const RunConfig& c) {
  Json j;
  j["tx_lat"] = c.tx.lat_deg;
  j["tx_lon"] = c.tx.lon_deg;
  j["rx_lat"] = c.rx.lat_deg;
  j["rx_lon"] = c.rx.lon_deg;
  j["n_samples"] = c.n_samples;
  j["idw_power"] = c.idw_power;
  j["station_max_distance_m"] = c.station_max_distance_m;
  j["ma_window_s"] = c.ma_window_s;
  j["ma_centered"] = c.ma_centered;
  j["outlier_k"] = c.outlier_k;
  j["resample_step_s"] = c.resample_step_s;
  j["earth_radius_m"] = c.earth_radius_m;
  j["summary_std"] = c.population_std ? "population" : "sample";
  return j;
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  c.tx = GeoPoint{j.at("tx_lat").get<double>(), j.at("tx_lon").get<double>()};
  c.rx = GeoPoint{j.at("rx_lat").get<double>(), j.at("rx_lon").get<double>()};
  c.n_samples = j.at("n_samples").get<int>();
  c.idw_power = j.at("idw_power").get<double>();
  c.station_max_distance_m = j.at("station_max_distance_m").get<double>();
  c.ma_window_s = j.at("ma_window_s").get<std::int64_t>();
  c.ma_centered = j.at("ma_centered").get<bool>();
  c.outlier_k = j.at("outlier_k").get<double>();
  c.resample_step_s = j.at("resample_step_s").get<std::int64_t>();
  c.earth_radius_m = j.at("earth_radius_m").get<double>();
  c.population_std = j.at("summary_std").get<std::string>() == "population";
  return c;
}

MeteoFactor factor_from_json(const Json& j, const char* key) {
  const std::string name = j.at(key).get<std::string>();
  const auto factor = factor_from_name(name);
  if (!factor) {
    throw Error(ErrorKind::Parse, "report: unknown factor '" + name + "'");
  }
  return *factor;
}

}  // namespace

std::string RunReport::to_json_text() const {
  Json j;
  j["config"] = config_to_json(config);
  j["path_length_m"] = path_length_m;

  Json stations = Json::array();
  for (const StationRosterEntry& entry : roster) {
    Json s;
    s["station_id"] = entry.station_id;
    s["lat"] = entry.location.lat_deg;
    s["lon"] = entry.location.lon_deg;
    s["min_distance_to_path_m"] = entry.min_distance_to_path_m;
    s["used"] = entry.used;
    stations.push_back(std::move(s));
  }
  j["stations"] = std::move(stations);

  Json count_obj(nlohmann::json::value_t::object);
  for (const auto& [name, value] : counts) count_obj[name] = value;
  j["counts"] = std::move(count_obj);

  Json cells = Json::array();
  for (const ProfileCell& cell : profile.cells) {
    Json c;
    c["sample_index"] = cell.sample_index;
    c["factor"] = std::string(factor_name(cell.factor));
    if (cell.defined) {
      c["r"] = cell.r;
    } else {
      c["r"] = nullptr;
      c["reason"] = cell.reason;
    }
    c["n_pairs"] = cell.n_pairs;
    cells.push_back(std::move(c));
  }
  j["profile"] = std::move(cells);

  Json factors = Json::array();
  for (const FactorSummary& fs : summary.factors) {
    Json f;
    f["factor"] = std::string(factor_name(fs.factor));
    f["n_points"] = fs.n_points;
    if (fs.n_points >= 1) {
      f["mean_r"] = fs.mean_r;
    } else {
      f["mean_r"] = nullptr;
    }
    if (fs.std_r) {
      f["std_r"] = *fs.std_r;
    } else {
      f["std_r"] = nullptr;
    }
    factors.push_back(std::move(f));
  }
  j["summary"] = std::move(factors);

  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

RunReport RunReport::from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse,
                std::string("report: invalid JSON: ") + e.what());
  }
  try {
    RunReport report;
    report.config = config_from_json(j.at("config"));
    report.path_length_m = j.at("path_length_m").get<double>();
    for (const Json& s : j.at("stations")) {
      StationRosterEntry entry;
      entry.station_id = s.at("station_id").get<std::string>();
      entry.location =
          GeoPoint{s.at("lat").get<double>(), s.at("lon").get<double>()};
      entry.min_distance_to_path_m =
          s.at("min_distance_to_path_m").get<double>();
      entry.used = s.at("used").get<bool>();
      report.roster.push_back(std::move(entry));
    }
    for (const auto& [name, value] : j.at("counts").items()) {
      report.counts.emplace_back(name, value.get<std::int64_t>());
    }
    for (const Json& c : j.at("profile")) {
      ProfileCell cell;
      cell.sample_index = c.at("sample_index").get<std::size_t>();
      cell.factor = factor_from_json(c, "factor");
      cell.n_pairs = c.at("n_pairs").get<std::size_t>();
      if (c.at("r").is_null()) {
        cell.defined = false;
        cell.reason = c.at("reason").get<std::string>();
      } else {
        cell.defined = true;
        cell.r = c.at("r").get<double>();
      }
      report.profile.cells.push_back(std::move(cell));
    }
    for (const Json& f : j.at("summary")) {
      FactorSummary fs;
      fs.factor = factor_from_json(f, "factor");
      fs.n_points = f.at("n_points").get<std::size_t>();
      if (!f.at("mean_r").is_null()) fs.mean_r = f.at("mean_r").get<double>();
      if (!f.at("std_r").is_null()) fs.std_r = f.at("std_r").get<double>();
      report.summary.factors.push_back(fs);
    }
    report.warnings = j.at("warnings").get<std::vector<std::string>>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse,
                std::string("report: missing or mistyped field: ") + e.what());
  }
}

}  // namespace elpath

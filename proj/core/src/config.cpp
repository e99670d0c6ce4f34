#include "elpath/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "elpath/errors.hpp"

namespace elpath {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
}

double config_double(const KeyValueMap& map, const std::string& key,
                     double fallback) {
  auto it = map.find(key);
  if (it == map.end()) return fallback;
  double value = 0;
  const char* first = it->second.data();
  const char* last = first + it->second.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorKind::Config,
                "key '" + key + "': invalid number '" + it->second + "'");
  }
  return value;
}

double required_double(const KeyValueMap& map, const std::string& key) {
  if (!map.contains(key)) {
    throw Error(ErrorKind::Config, "missing required key '" + key + "'");
  }
  return config_double(map, key, 0.0);
}

std::int64_t config_int(const KeyValueMap& map, const std::string& key,
                        std::int64_t fallback) {
  auto it = map.find(key);
  if (it == map.end()) return fallback;
  std::int64_t value = 0;
  const char* first = it->second.data();
  const char* last = first + it->second.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorKind::Config,
                "key '" + key + "': invalid integer '" + it->second + "'");
  }
  return value;
}

bool config_bool(const KeyValueMap& map, const std::string& key,
                 bool fallback) {
  auto it = map.find(key);
  if (it == map.end()) return fallback;
  if (it->second == "true") return true;
  if (it->second == "false") return false;
  throw Error(ErrorKind::Config, "key '" + key + "': expected true or false, got '" +
                                     it->second + "'");
}

}  // namespace

KeyValueMap parse_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Config, "cannot open config '" + path.string() + "'");
  }
  KeyValueMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, path.string() + ":" +
                                         std::to_string(line_no) +
                                         ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw Error(ErrorKind::Config, path.string() + ":" +
                                         std::to_string(line_no) +
                                         ": empty key");
    }
    if (!map.emplace(key, value).second) {
      throw Error(ErrorKind::Config, path.string() + ":" +
                                         std::to_string(line_no) +
                                         ": duplicate key '" + key + "'");
    }
  }
  return map;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  return from_map(parse_key_value_file(path));
}

RunConfig RunConfig::from_map(const KeyValueMap& map) {
  static const std::set<std::string> known{
      "tx_lat",       "tx_lon",        "rx_lat",
      "rx_lon",       "n_samples",     "idw_power",
      "station_max_distance_m",        "ma_window_s",
      "ma_centered",  "outlier_k",     "resample_step_s",
      "earth_radius_m",                "summary_std"};
  for (const auto& [key, value] : map) {
    if (!known.contains(key)) {
      throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
    }
  }

  RunConfig cfg;
  try {
    cfg.tx = make_geo_point(required_double(map, "tx_lat"),
                            required_double(map, "tx_lon"));
    cfg.rx = make_geo_point(required_double(map, "rx_lat"),
                            required_double(map, "rx_lon"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(ErrorKind::Config, std::string("tx/rx coordinates: ") + e.what());
  }
  cfg.n_samples = static_cast<int>(config_int(map, "n_samples", cfg.n_samples));
  cfg.idw_power = config_double(map, "idw_power", cfg.idw_power);
  cfg.station_max_distance_m =
      config_double(map, "station_max_distance_m", cfg.station_max_distance_m);
  cfg.ma_window_s = config_int(map, "ma_window_s", cfg.ma_window_s);
  cfg.ma_centered = config_bool(map, "ma_centered", cfg.ma_centered);
  cfg.outlier_k = config_double(map, "outlier_k", cfg.outlier_k);
  cfg.resample_step_s = config_int(map, "resample_step_s", cfg.resample_step_s);
  cfg.earth_radius_m = config_double(map, "earth_radius_m", cfg.earth_radius_m);
  if (auto it = map.find("summary_std"); it != map.end()) {
    if (it->second == "population") {
      cfg.population_std = true;
    } else if (it->second == "sample") {
      cfg.population_std = false;
    } else {
      throw Error(ErrorKind::Config,
                  "key 'summary_std': expected population or sample, got '" +
                      it->second + "'");
    }
  }
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (n_samples < 2) {
    throw Error(ErrorKind::Config, "n_samples must be at least 2");
  }
  if (!(idw_power > 0.0)) {
    throw Error(ErrorKind::Config, "idw_power must be positive");
  }
  if (!(station_max_distance_m > 0.0)) {
    throw Error(ErrorKind::Config, "station_max_distance_m must be positive");
  }
  if (ma_window_s <= 0) {
    throw Error(ErrorKind::Config, "ma_window_s must be positive");
  }
  if (!(outlier_k > 0.0)) {
    throw Error(ErrorKind::Config, "outlier_k must be positive");
  }
  if (resample_step_s <= 0) {
    throw Error(ErrorKind::Config, "resample_step_s must be positive");
  }
  if (!(earth_radius_m > 0.0)) {
    throw Error(ErrorKind::Config, "earth_radius_m must be positive");
  }
}

}  // namespace elpath

#include "elpath/synth.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>

#include "json.hpp"

#include "elpath/errors.hpp"
#include "elpath/interpolate.hpp"
#include "elpath/propagation.hpp"

namespace elpath {

namespace {

constexpr double kCelsiusToKelvin = 273.15;

double parse_value(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::Config,
                "scenario key '" + key + "': cannot parse '" + text +
                    "' as a number");
  }
  return value;
}

std::int64_t parse_integer(const std::string& key, const std::string& text) {
  std::int64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::Config,
                "scenario key '" + key + "': cannot parse '" + text +
                    "' as an integer");
  }
  return value;
}

double storage_value(MeteoFactor factor, double csv_unit_value) {
  return factor == MeteoFactor::Temperature
             ? csv_unit_value + kCelsiusToKelvin
             : csv_unit_value;
}

std::map<MeteoFactor, FactorProcess> default_factors() {
  return {
      {MeteoFactor::Temperature, {15.0, 0.0, 0.0, 0.0, 0.0}},
      {MeteoFactor::Humidity, {70.0, 0.0, 0.0, 0.0, 0.0}},
      {MeteoFactor::Pressure, {1013.25, 0.0, 0.0, 0.0, 0.0}},
      {MeteoFactor::VaporPressure, {10.0, 0.0, 0.0, 0.0, 0.0}},
      {MeteoFactor::Visibility, {10000.0, 0.0, 0.0, 0.0, 0.0}},
      {MeteoFactor::CloudAmount, {5.0, 0.0, 0.0, 0.0, 0.0}},
  };
}

}  // namespace

SynthScenario SynthScenario::from_map(const KeyValueMap& map) {
  SynthScenario s;
  s.factors = default_factors();
  for (const MeteoFactor f : kAllFactors) s.couplings_us[f] = 0.0;

  double tx_lat = s.tx.lat_deg, tx_lon = s.tx.lon_deg;
  double rx_lat = s.rx.lat_deg, rx_lon = s.rx.lon_deg;

  struct StationDraft {
    std::optional<std::string> id;
    std::optional<double> lat;
    std::optional<double> lon;
  };
  std::map<std::size_t, StationDraft> drafts;

  for (const auto& [key, text] : map) {
    if (key == "seed") {
      const std::int64_t v = parse_integer(key, text);
      if (v < 0) {
        throw Error(ErrorKind::Config, "scenario key 'seed': must be >= 0");
      }
      s.seed = static_cast<std::uint64_t>(v);
    } else if (key == "start") {
      try {
        s.start = parse_iso8601_utc(text);
      } catch (const Error& e) {
        throw Error(ErrorKind::Config,
                    "scenario key 'start': " + std::string(e.what()));
      }
    } else if (key == "duration_s") {
      s.duration_s = parse_integer(key, text);
    } else if (key == "step_s") {
      s.step_s = parse_integer(key, text);
    } else if (key == "tx_lat") {
      tx_lat = parse_value(key, text);
    } else if (key == "tx_lon") {
      tx_lon = parse_value(key, text);
    } else if (key == "rx_lat") {
      rx_lat = parse_value(key, text);
    } else if (key == "rx_lon") {
      rx_lon = parse_value(key, text);
    } else if (key == "n_samples") {
      const std::int64_t v = parse_integer(key, text);
      if (v < 2) {
        throw Error(ErrorKind::Config, "scenario key 'n_samples': must be >= 2");
      }
      s.n_samples = static_cast<std::size_t>(v);
    } else if (key == "driven_sample") {
      const std::int64_t v = parse_integer(key, text);
      if (v < 1) {
        throw Error(ErrorKind::Config,
                    "scenario key 'driven_sample': must be >= 1");
      }
      s.driven_sample = static_cast<std::size_t>(v);
    } else if (key == "idw_power") {
      s.idw_power = parse_value(key, text);
    } else if (key == "earth_radius_m") {
      s.earth_radius_m = parse_value(key, text);
    } else if (key == "t_r_us") {
      s.t_r_us = parse_value(key, text);
    } else if (key == "noise_us") {
      s.noise_us = parse_value(key, text);
    } else if (key == "spike_rate") {
      s.spike_rate = parse_value(key, text);
    } else if (key == "spike_magnitude_us") {
      s.spike_magnitude_us = parse_value(key, text);
    } else if (key.starts_with("station.")) {
      const std::string rest = key.substr(8);
      const auto dot = rest.find('.');
      if (dot == std::string::npos) {
        throw Error(ErrorKind::Config,
                    "scenario key '" + key +
                        "': expected station.<index>.<id|lat|lon>");
      }
      const std::int64_t idx = parse_integer(key, rest.substr(0, dot));
      if (idx < 0) {
        throw Error(ErrorKind::Config,
                    "scenario key '" + key + "': station index must be >= 0");
      }
      StationDraft& draft = drafts[static_cast<std::size_t>(idx)];
      const std::string field = rest.substr(dot + 1);
      if (field == "id") {
        draft.id = text;
      } else if (field == "lat") {
        draft.lat = parse_value(key, text);
      } else if (field == "lon") {
        draft.lon = parse_value(key, text);
      } else {
        throw Error(ErrorKind::Config,
                    "scenario key '" + key + "': unknown station field '" +
                        field + "'");
      }
    } else if (key.starts_with("factor.")) {
      const std::string rest = key.substr(7);
      const auto dot = rest.find('.');
      if (dot == std::string::npos) {
        throw Error(ErrorKind::Config,
                    "scenario key '" + key +
                        "': expected factor.<name>.<parameter>");
      }
      const auto factor = factor_from_name(rest.substr(0, dot));
      if (!factor) {
        throw Error(ErrorKind::Config,
                    "scenario key '" + key + "': unknown factor '" +
                        rest.substr(0, dot) + "'");
      }
      FactorProcess& proc = s.factors[*factor];
      const std::string param = rest.substr(dot + 1);
      if (param == "base") {
        proc.base = parse_value(key, text);
      } else if (param == "amplitude") {
        proc.amplitude = parse_value(key, text);
      } else if (param == "phase_h") {
        proc.phase_h = parse_value(key, text);
      } else if (param == "ar_sigma") {
        proc.ar_sigma = parse_value(key, text);
      } else if (param == "ar_phi") {
        proc.ar_phi = parse_value(key, text);
      } else {
        throw Error(ErrorKind::Config,
                    "scenario key '" + key + "': unknown factor parameter '" +
                        param + "'");
      }
    } else if (key.starts_with("coupling.")) {
      const auto factor = factor_from_name(key.substr(9));
      if (!factor) {
        throw Error(ErrorKind::Config,
                    "scenario key '" + key + "': unknown factor '" +
                        key.substr(9) + "'");
      }
      s.couplings_us[*factor] = parse_value(key, text);
    } else {
      throw Error(ErrorKind::Config, "unknown scenario key '" + key + "'");
    }
  }

  try {
    s.tx = make_geo_point(tx_lat, tx_lon);
    s.rx = make_geo_point(rx_lat, rx_lon);
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, std::string("scenario sites: ") + e.what());
  }

  std::size_t expected = 0;
  for (const auto& [idx, draft] : drafts) {
    if (idx != expected) {
      throw Error(ErrorKind::Config,
                  "scenario stations: indices must be contiguous from 0, "
                  "missing station." +
                      std::to_string(expected));
    }
    ++expected;
    if (!draft.id || !draft.lat || !draft.lon) {
      throw Error(ErrorKind::Config,
                  "scenario station." + std::to_string(idx) +
                      ": id, lat and lon are all required");
    }
    SynthStation station;
    station.id = *draft.id;
    try {
      station.location = make_geo_point(*draft.lat, *draft.lon);
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, "scenario station." + std::to_string(idx) +
                                         ": " + e.what());
    }
    s.stations.push_back(std::move(station));
  }
  return s;
}

SynthScenario SynthScenario::from_file(const std::filesystem::path& path) {
  return from_map(parse_key_value_file(path));
}

void SynthScenario::validate() const {
  if (stations.empty()) {
    throw Error(ErrorKind::Input, "scenario has zero stations");
  }
  if (step_s <= 0) {
    throw Error(ErrorKind::Config, "scenario step_s must be positive");
  }
  if (duration_s < step_s) {
    throw Error(ErrorKind::Config,
                "scenario duration_s must be at least one step");
  }
  if (n_samples < 2) {
    throw Error(ErrorKind::Config, "scenario n_samples must be >= 2");
  }
  if (driven_sample < 1 || driven_sample > n_samples) {
    throw Error(ErrorKind::Config,
                "scenario driven_sample must lie in [1, n_samples]");
  }
  if (!(idw_power > 0.0) || !std::isfinite(idw_power)) {
    throw Error(ErrorKind::Config, "scenario idw_power must be positive");
  }
  if (!(earth_radius_m > 0.0) || !std::isfinite(earth_radius_m)) {
    throw Error(ErrorKind::Config, "scenario earth_radius_m must be positive");
  }
  if (!std::isfinite(t_r_us)) {
    throw Error(ErrorKind::Config, "scenario t_r_us must be finite");
  }
  if (!(noise_us >= 0.0) || !std::isfinite(noise_us)) {
    throw Error(ErrorKind::Config, "scenario noise_us must be >= 0");
  }
  if (!(spike_rate >= 0.0 && spike_rate <= 1.0)) {
    throw Error(ErrorKind::Config, "scenario spike_rate must lie in [0, 1]");
  }
  if (!(spike_magnitude_us >= 0.0) || !std::isfinite(spike_magnitude_us)) {
    throw Error(ErrorKind::Config,
                "scenario spike_magnitude_us must be >= 0");
  }
  for (const auto& [factor, proc] : factors) {
    const std::string name(factor_name(factor));
    if (!std::isfinite(proc.base) || !std::isfinite(proc.amplitude) ||
        !std::isfinite(proc.phase_h)) {
      throw Error(ErrorKind::Config,
                  "scenario factor." + name + ": parameters must be finite");
    }
    if (!(proc.ar_sigma >= 0.0) || !std::isfinite(proc.ar_sigma)) {
      throw Error(ErrorKind::Config,
                  "scenario factor." + name + ".ar_sigma must be >= 0");
    }
    if (!(std::abs(proc.ar_phi) < 1.0)) {
      throw Error(ErrorKind::Config,
                  "scenario factor." + name +
                      ".ar_phi must lie in (-1, 1) for stationarity");
    }
  }
  for (const auto& [factor, c] : couplings_us) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::Config,
                  "scenario coupling." + std::string(factor_name(factor)) +
                      " must be finite");
    }
  }
}

SynthOutputs generate(const SynthScenario& scenario,
                      const std::filesystem::path& out_dir) {
  scenario.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::Io, "cannot create output directory '" +
                                   out_dir.string() + "': " + ec.message());
  }

  const auto path =
      sample_path(scenario.tx, scenario.rx, scenario.n_samples,
                  scenario.earth_radius_m);
  const GeoPoint target = path[scenario.driven_sample - 1].point;

  const std::size_t n_times =
      static_cast<std::size_t>(scenario.duration_s / scenario.step_s);
  std::vector<UtcSeconds> times(n_times);
  for (std::size_t i = 0; i < n_times; ++i) {
    times[i] = scenario.start + static_cast<std::int64_t>(i) * scenario.step_s;
  }

  std::mt19937_64 rng(scenario.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  // Station processes: stations in listed order, factors in declaration
  // order, one stationary-initialized AR(1) walk per pair. Every pair draws
  // the same number of variates, so edits to one process parameter never
  // shift another stream.
  std::vector<StationRecordSet> stations;
  stations.reserve(scenario.stations.size());
  for (const SynthStation& site : scenario.stations) {
    StationRecordSet rec;
    rec.station_id = site.id;
    rec.location = site.location;
    for (const MeteoFactor f : kAllFactors) {
      const FactorProcess& proc = scenario.factors.at(f);
      const double init_sigma =
          proc.ar_sigma / std::sqrt(1.0 - proc.ar_phi * proc.ar_phi);
      double ar = init_sigma * gauss(rng);
      std::vector<double> values(n_times);
      for (std::size_t i = 0; i < n_times; ++i) {
        if (i > 0) ar = proc.ar_phi * ar + proc.ar_sigma * gauss(rng);
        const double hours =
            static_cast<double>(times[i] - scenario.start) / 3600.0;
        const double diurnal =
            proc.amplitude *
            std::sin(2.0 * std::numbers::pi * (hours + proc.phase_h) / 24.0);
        values[i] = storage_value(f, proc.base + diurnal + ar);
      }
      rec.series.emplace(f, TimeSeries(std::vector<UtcSeconds>(times),
                                       std::move(values)));
    }
    stations.push_back(std::move(rec));
  }

  SynthOutputs out;
  const auto stations_dir = out_dir / "stations";
  std::filesystem::create_directories(stations_dir, ec);
  if (ec) {
    throw Error(ErrorKind::Io, "cannot create output directory '" +
                                   stations_dir.string() + "': " + ec.message());
  }
  out.metadata_csv = stations_dir / "stations.csv";
  std::vector<StationMeta> metadata;
  metadata.reserve(stations.size());
  for (const auto& rec : stations) {
    metadata.push_back(StationMeta{rec.station_id, rec.location});
  }
  write_station_metadata(out.metadata_csv, metadata);
  for (const auto& rec : stations) {
    const auto file = stations_dir / (rec.station_id + ".csv");
    write_station_csv(file, rec);
    out.station_csvs.push_back(file);
  }

  // Constant baseline propagation delay from the base-state refractivity.
  const double n_base = refractivity(
      scenario.factors.at(MeteoFactor::Temperature).base + kCelsiusToKelvin,
      scenario.factors.at(MeteoFactor::Pressure).base,
      scenario.factors.at(MeteoFactor::VaporPressure).base);
  const RefractivityProfile profile(
      std::vector<double>(path.size(), n_base), /*allow_implausible=*/true);
  const double pf_baseline_us = primary_factor(profile, path) * 1.0e6;

  std::vector<double> distances(stations.size());
  for (std::size_t st = 0; st < stations.size(); ++st) {
    distances[st] = great_circle_distance(target, stations[st].location,
                                          scenario.earth_radius_m);
  }

  std::vector<ToaRecord> toa(n_times);
  std::vector<UtcSeconds> spike_times;
  std::vector<double> snapshot(stations.size());
  for (std::size_t i = 0; i < n_times; ++i) {
    double planted = 0.0;
    for (const MeteoFactor f : kAllFactors) {
      const double coupling = scenario.couplings_us.at(f);
      if (coupling == 0.0) continue;
      for (std::size_t st = 0; st < stations.size(); ++st) {
        snapshot[st] = stations[st].series.at(f).value(i);
      }
      const double estimate =
          idw_from_distances(distances, snapshot, scenario.idw_power);
      const double base = storage_value(f, scenario.factors.at(f).base);
      planted += coupling * (estimate - base);
    }
    const double noise = scenario.noise_us * gauss(rng);
    const bool spiked = uniform(rng) < scenario.spike_rate;
    if (spiked) spike_times.push_back(times[i]);
    toa[i].timestamp = times[i];
    toa[i].toa_us = scenario.t_r_us + pf_baseline_us + planted + noise +
                    (spiked ? scenario.spike_magnitude_us : 0.0);
  }
  out.toa_csv = out_dir / "toa.csv";
  write_toa_csv(out.toa_csv, toa);

  nlohmann::ordered_json truth;
  truth["seed"] = scenario.seed;
  truth["start"] = format_iso8601_utc(scenario.start);
  truth["duration_s"] = scenario.duration_s;
  truth["step_s"] = scenario.step_s;
  truth["tx"] = {{"lat", scenario.tx.lat_deg}, {"lon", scenario.tx.lon_deg}};
  truth["rx"] = {{"lat", scenario.rx.lat_deg}, {"lon", scenario.rx.lon_deg}};
  truth["n_samples"] = scenario.n_samples;
  truth["driven_sample"] = scenario.driven_sample;
  truth["idw_power"] = scenario.idw_power;
  truth["earth_radius_m"] = scenario.earth_radius_m;
  truth["t_r_us"] = scenario.t_r_us;
  truth["pf_baseline_us"] = pf_baseline_us;
  truth["noise_us"] = scenario.noise_us;
  truth["spike_rate"] = scenario.spike_rate;
  truth["spike_magnitude_us"] = scenario.spike_magnitude_us;
  nlohmann::ordered_json couplings(nlohmann::json::value_t::object);
  nlohmann::ordered_json bases(nlohmann::json::value_t::object);
  for (const MeteoFactor f : kAllFactors) {
    couplings[std::string(factor_name(f))] = scenario.couplings_us.at(f);
    bases[std::string(factor_name(f))] = scenario.factors.at(f).base;
  }
  truth["couplings_us"] = couplings;
  truth["factor_base"] = bases;
  nlohmann::ordered_json spikes(nlohmann::json::value_t::array);
  for (const UtcSeconds t : spike_times) spikes.push_back(format_iso8601_utc(t));
  truth["spike_timestamps"] = spikes;

  out.truth_json = out_dir / "truth.json";
  std::ofstream truth_file(out.truth_json);
  if (!truth_file) {
    throw Error(ErrorKind::Io,
                "cannot write '" + out.truth_json.string() + "'");
  }
  truth_file << truth.dump(2) << '\n';
  return out;
}

}  // namespace elpath

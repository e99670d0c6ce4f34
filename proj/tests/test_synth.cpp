#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "elpath/errors.hpp"
#include "elpath/ingest.hpp"
#include "elpath/preprocess.hpp"
#include "elpath/synth.hpp"
#include "support.hpp"

using namespace elpath;
using testutil::TempDir;

namespace {

KeyValueMap tiny_scenario_map() {
  return {
      {"seed", "7"},
      {"start", "2013-01-11T00:00:00Z"},
      {"duration_s", "172800"},  // 48 hourly samples
      {"step_s", "3600"},
      {"n_samples", "10"},
      {"driven_sample", "10"},
      {"coupling.temperature", "0.05"},
      {"factor.temperature.amplitude", "6"},
      {"factor.temperature.ar_sigma", "0.8"},
      {"factor.temperature.ar_phi", "0.5"},
      {"station.0.id", "S01"},
      {"station.0.lat", "35.2"},
      {"station.0.lon", "126.9"},
      {"station.1.id", "S02"},
      {"station.1.lat", "36.5"},
      {"station.1.lon", "127.05"},
  };
}

}  // namespace

TEST_SUITE_BEGIN("synth");

TEST_CASE("scenarios parse with sensible defaults") {
  const SynthScenario s = SynthScenario::from_map(tiny_scenario_map());
  CHECK(s.seed == 7);
  CHECK(s.start == 1357862400);
  CHECK(s.step_s == 3600);
  CHECK(s.n_samples == 10);
  CHECK(s.driven_sample == 10);
  CHECK(s.t_r_us == 30.0);
  CHECK(s.noise_us == 0.0);
  CHECK(s.stations.size() == 2);
  CHECK(s.stations[0].id == "S01");
  CHECK(s.stations[1].location == GeoPoint{36.5, 127.05});
  // All six processes exist; unmentioned ones keep their quiet defaults.
  CHECK(s.factors.size() == 6);
  CHECK(s.factors.at(MeteoFactor::Temperature).amplitude == 6.0);
  CHECK(s.factors.at(MeteoFactor::Pressure).base == 1013.25);
  CHECK(s.factors.at(MeteoFactor::Pressure).ar_sigma == 0.0);
  CHECK(s.couplings_us.at(MeteoFactor::Temperature) == 0.05);
  CHECK(s.couplings_us.at(MeteoFactor::Humidity) == 0.0);
}

TEST_CASE("scenario parse failures name the offending key") {
  auto expect_config_error = [](KeyValueMap map, const std::string& needle) {
    try {
      SynthScenario::from_map(map);
      FAIL_CHECK("expected config error for ", needle);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  KeyValueMap typo = tiny_scenario_map();
  typo["noize_us"] = "0.1";
  expect_config_error(typo, "noize_us");

  KeyValueMap badfactor = tiny_scenario_map();
  badfactor["factor.wind.base"] = "3";
  expect_config_error(badfactor, "wind");

  KeyValueMap badparam = tiny_scenario_map();
  badparam["factor.temperature.wobble"] = "3";
  expect_config_error(badparam, "wobble");

  KeyValueMap badcoupling = tiny_scenario_map();
  badcoupling["coupling.sunshine"] = "1";
  expect_config_error(badcoupling, "sunshine");

  KeyValueMap gap = tiny_scenario_map();
  gap.erase("station.1.id");
  gap.erase("station.1.lat");
  gap.erase("station.1.lon");
  gap["station.2.id"] = "S03";
  gap["station.2.lat"] = "36.0";
  gap["station.2.lon"] = "127.0";
  expect_config_error(gap, "station.1");

  KeyValueMap partial = tiny_scenario_map();
  partial.erase("station.1.lon");
  expect_config_error(partial, "station.1");

  KeyValueMap badnum = tiny_scenario_map();
  badnum["t_r_us"] = "thirty";
  expect_config_error(badnum, "t_r_us");
}

TEST_CASE("range violations surface at validation, not parse") {
  // |ar_phi| >= 1 has no stationary variance; the key still parses, and the
  // rejection comes from the semantic check generate() runs first.
  KeyValueMap unstable = tiny_scenario_map();
  unstable["factor.temperature.ar_phi"] = "1.0";
  const SynthScenario s = SynthScenario::from_map(unstable);
  try {
    s.validate();
    FAIL("expected config error for ar_phi");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("ar_phi") != std::string::npos);
  }
}

TEST_CASE("a scenario without stations cannot generate") {
  KeyValueMap map = tiny_scenario_map();
  for (auto it = map.begin(); it != map.end();) {
    it = it->first.starts_with("station.") ? map.erase(it) : std::next(it);
  }
  const SynthScenario s = SynthScenario::from_map(map);
  TempDir dir;
  try {
    generate(s, dir.path());
    FAIL("expected input error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
    CHECK(std::string(e.what()).find("zero stations") != std::string::npos);
  }
}

TEST_CASE("generation writes the full campaign layout") {
  const SynthScenario s = SynthScenario::from_map(tiny_scenario_map());
  TempDir dir;
  const SynthOutputs outputs = generate(s, dir.path());

  CHECK(outputs.station_csvs.size() == 2);
  CHECK(std::filesystem::exists(outputs.metadata_csv));
  CHECK(std::filesystem::exists(outputs.toa_csv));
  CHECK(std::filesystem::exists(outputs.truth_json));
  for (const auto& p : outputs.station_csvs) {
    CHECK(std::filesystem::exists(p));
  }
  // Station files live beside their metadata so the directory loads as-is.
  CHECK(outputs.metadata_csv.parent_path() ==
        outputs.station_csvs[0].parent_path());
  const auto loaded = load_station_dir(outputs.metadata_csv.parent_path());
  CHECK(loaded.size() == 2);

  // 48 hourly arrival times.
  const auto toa = read_toa_csv(outputs.toa_csv);
  CHECK(toa.size() == 48);
  CHECK(toa.front().timestamp == 1357862400);
  CHECK(toa.back().timestamp == 1357862400 + 47 * 3600);

  // The ground-truth file records what was planted.
  const auto truth = nlohmann::json::parse(testutil::read_file(outputs.truth_json));
  CHECK(truth.at("seed").get<std::uint64_t>() == 7);
  CHECK(truth.at("driven_sample").get<std::size_t>() == 10);
  CHECK(truth.at("couplings_us").at("temperature").get<double>() == 0.05);
  CHECK(truth.at("n_samples").get<std::size_t>() == 10);
  CHECK(truth.at("t_r_us").get<double>() == 30.0);
  CHECK(truth.at("pf_baseline_us").get<double>() > 700.0);
  CHECK(truth.at("spike_timestamps").is_array());
}

TEST_CASE("the seed fully determines every output byte") {
  const SynthScenario s = SynthScenario::from_map(tiny_scenario_map());
  TempDir a, b;
  const SynthOutputs out_a = generate(s, a.path());
  const SynthOutputs out_b = generate(s, b.path());

  CHECK(testutil::read_file(out_a.toa_csv) == testutil::read_file(out_b.toa_csv));
  CHECK(testutil::read_file(out_a.truth_json) ==
        testutil::read_file(out_b.truth_json));
  CHECK(testutil::read_file(out_a.metadata_csv) ==
        testutil::read_file(out_b.metadata_csv));
  for (std::size_t i = 0; i < out_a.station_csvs.size(); ++i) {
    CHECK(testutil::read_file(out_a.station_csvs[i]) ==
          testutil::read_file(out_b.station_csvs[i]));
  }

  // A different seed must actually change the data.
  SynthScenario other = s;
  other.seed = 8;
  TempDir c;
  const SynthOutputs out_c = generate(other, c.path());
  CHECK(testutil::read_file(out_a.toa_csv) != testutil::read_file(out_c.toa_csv));
}

TEST_CASE("without couplings or noise the arrival time is flat") {
  KeyValueMap map = tiny_scenario_map();
  map["coupling.temperature"] = "0";
  const SynthScenario s = SynthScenario::from_map(map);
  TempDir dir;
  const SynthOutputs outputs = generate(s, dir.path());
  const auto toa = read_toa_csv(outputs.toa_csv);

  // Every arrival time equals receiver delay + baseline exactly, so the
  // deviation series is identically zero.
  REQUIRE(toa.size() == 48);
  for (const auto& rec : toa) CHECK(rec.toa_us == toa.front().toa_us);

  const TimeSeries dtoa = delta_toa(to_time_series(toa), 5.0, 3600, true);
  for (std::size_t i = 0; i < dtoa.size(); ++i) CHECK(dtoa.value(i) == 0.0);
}

TEST_CASE("spikes hit roughly the configured fraction of samples") {
  KeyValueMap map = tiny_scenario_map();
  map["duration_s"] = "3600000";  // 1000 samples
  map["spike_rate"] = "0.02";
  map["spike_magnitude_us"] = "25";
  map["noise_us"] = "0.01";
  const SynthScenario s = SynthScenario::from_map(map);
  TempDir dir;
  const SynthOutputs outputs = generate(s, dir.path());
  const auto truth = nlohmann::json::parse(testutil::read_file(outputs.truth_json));
  const auto spikes = truth.at("spike_timestamps");
  // Binomial(1000, 0.02): anything outside [2, 60] would be suspicious.
  CHECK(spikes.size() >= 2);
  CHECK(spikes.size() <= 60);

  // Spiked rows really carry the glitch.
  const auto toa = read_toa_csv(outputs.toa_csv);
  const double baseline = truth.at("t_r_us").get<double>() +
                          truth.at("pf_baseline_us").get<double>();
  std::size_t big = 0;
  for (const auto& rec : toa) {
    if (std::abs(rec.toa_us - baseline) > 20.0) ++big;
  }
  CHECK(big == spikes.size());
}

TEST_SUITE_END();

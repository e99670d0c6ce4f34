#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "elpath/config.hpp"
#include "elpath/geodesy.hpp"
#include "elpath/ingest.hpp"
#include "elpath/time.hpp"

namespace elpath {

/// Diurnal sinusoid plus AR(1) noise. base and amplitude are in the
/// station-CSV unit of the factor (°C for temperature); phase_h shifts the
/// 24 h cycle; the AR(1) term uses stationary initialization.
struct FactorProcess {
  double base = 0.0;
  double amplitude = 0.0;
  double phase_h = 0.0;
  double ar_sigma = 0.0;
  double ar_phi = 0.0;
};

struct SynthStation {
  std::string id;
  GeoPoint location;
};

/// Everything the generator needs; the seed fully determines all outputs.
struct SynthScenario {
  std::uint64_t seed = 1;
  UtcSeconds start = 1357862400;  // 2013-01-11T00:00:00Z
  std::int64_t duration_s = 12 * 86400;
  std::int64_t step_s = 3600;
  GeoPoint tx{35.04, 126.81};
  GeoPoint rx{36.99, 127.11};
  std::size_t n_samples = 50;
  std::size_t driven_sample = 50;  // 1-based path sample the couplings act at
  double idw_power = 2.0;
  double earth_radius_m = kDefaultEarthRadiusM;
  double t_r_us = 30.0;
  double noise_us = 0.0;
  double spike_rate = 0.0;          // per-sample probability
  double spike_magnitude_us = 0.0;  // additive glitch size
  std::vector<SynthStation> stations;
  std::map<MeteoFactor, FactorProcess> factors;    // all six always present
  std::map<MeteoFactor, double> couplings_us;      // µs per factor unit

  static SynthScenario from_map(const KeyValueMap& map);
  static SynthScenario from_file(const std::filesystem::path& path);
  void validate() const;
};

struct SynthOutputs {
  std::filesystem::path metadata_csv;
  std::vector<std::filesystem::path> station_csvs;
  std::filesystem::path toa_csv;
  std::filesystem::path truth_json;
};

/// Writes the station CSV set, the arrival-time CSV and a ground-truth JSON
/// into out_dir. The arrival times follow
///   toa_us = t_r + baseline_pf(base refractivity over the path)
///          + Σ_f coupling_f · (field_f at the driven sample − base_f)
///          + gaussian noise + optional spikes,
/// with field_f the same inverse-distance estimate the analysis recomputes.
SynthOutputs generate(const SynthScenario& scenario,
                      const std::filesystem::path& out_dir);

}  // namespace elpath

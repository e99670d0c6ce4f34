// Microbenchmarks for the per-sample hot paths: correlation, interpolation,
// smoothing and path sampling. Inputs are seeded so numbers are comparable
// across runs.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>
#include <vector>

#include "elpath/config.hpp"
#include "elpath/correlate.hpp"
#include "elpath/geodesy.hpp"
#include "elpath/ingest.hpp"
#include "elpath/interpolate.hpp"
#include "elpath/preprocess.hpp"
#include "elpath/timeseries.hpp"

namespace {

using namespace elpath;

std::vector<double> random_values(std::size_t n, std::uint64_t seed,
                                  double mean = 0.0, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(mean, sigma);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

std::vector<UtcSeconds> hourly_grid(std::size_t n) {
  std::vector<UtcSeconds> ts(n);
  for (std::size_t i = 0; i < n; ++i) {
    ts[i] = 1357862400 + static_cast<UtcSeconds>(i) * 3600;
  }
  return ts;
}

// A plausible campaign: hourly grid, stations strung along the path with all
// six factors reported at every grid point.
struct CampaignFixture {
  RunConfig cfg;
  std::vector<PathSample> path;
  std::vector<UtcSeconds> grid;
  std::vector<StationRecordSet> stations;
  TimeSeries dtoa;

  CampaignFixture(std::size_t n_hours, int n_path, std::size_t n_stations) {
    cfg.tx = make_geo_point(35.04, 126.81);
    cfg.rx = make_geo_point(36.99, 127.11);
    cfg.n_samples = n_path;
    path = sample_path(cfg.tx, cfg.rx, n_path, cfg.earth_radius_m);
    grid = hourly_grid(n_hours);

    std::uint64_t seed = 1;
    for (std::size_t s = 0; s < n_stations; ++s) {
      StationRecordSet station;
      station.station_id = "B" + std::to_string(s);
      const double frac =
          static_cast<double>(s + 1) / static_cast<double>(n_stations + 1);
      station.location = make_geo_point(35.04 + frac * (36.99 - 35.04),
                                        126.81 + frac * (127.11 - 126.81));
      for (MeteoFactor factor : kAllFactors) {
        station.series.emplace(
            factor, TimeSeries(grid, random_values(n_hours, seed++, 15.0, 4.0)));
      }
      stations.push_back(std::move(station));
    }
    dtoa = TimeSeries(grid, random_values(n_hours, seed, 0.0, 0.02));
  }
};

void BM_Pearson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_values(n, 11);
  const auto b = random_values(n, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pearson(a, b));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_Pearson)->Arg(128)->Arg(1024)->Arg(8192);

void BM_IdwFromDistances(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dist(100.0, 30000.0);
  std::vector<double> distances(n);
  for (auto& d : distances) d = dist(rng);
  const auto values = random_values(n, 22, 15.0, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(idw_from_distances(distances, values, 2.0));
  }
}
BENCHMARK(BM_IdwFromDistances)->Arg(4)->Arg(16)->Arg(64);

void BM_MovingAverage(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TimeSeries series(hourly_grid(n), random_values(n, 31, 727.4, 0.02));
  for (auto _ : state) {
    benchmark::DoNotOptimize(moving_average(series, 3 * 3600, true));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_MovingAverage)->Arg(288)->Arg(2048)->Arg(16384);

void BM_RemoveOutliers(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TimeSeries series(hourly_grid(n), random_values(n, 41, 727.4, 0.02));
  for (auto _ : state) {
    benchmark::DoNotOptimize(remove_outliers(series, 5.0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_RemoveOutliers)->Arg(288)->Arg(2048)->Arg(16384);

void BM_SamplePath(benchmark::State& state) {
  const auto tx = make_geo_point(35.04, 126.81);
  const auto rx = make_geo_point(36.99, 127.11);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_path(tx, rx, n));
  }
}
BENCHMARK(BM_SamplePath)->Arg(50)->Arg(500);

void BM_InterpolateFields(benchmark::State& state) {
  const CampaignFixture fix(288, 50, 10);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(interpolate_fields(fix.path, fix.stations,
                                                fix.grid, fix.cfg, nullptr,
                                                threads));
  }
}
BENCHMARK(BM_InterpolateFields)->Arg(1)->Arg(4)->UseRealTime();

void BM_CorrelationProfile(benchmark::State& state) {
  const CampaignFixture fix(288, 50, 10);
  const auto fields =
      interpolate_fields(fix.path, fix.stations, fix.grid, fix.cfg);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlation_profile(fix.dtoa, fields, threads));
  }
}
BENCHMARK(BM_CorrelationProfile)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}

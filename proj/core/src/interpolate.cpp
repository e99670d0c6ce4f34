#include "elpath/interpolate.hpp"

#include <cmath>

#include "elpath/errors.hpp"
#include "elpath/parallel.hpp"

namespace elpath {

namespace {

// Below this separation the weight 1/d^p is effectively singular, so the
// station's value is taken exactly.
constexpr double kExactDistanceM = 1.0;

}  // namespace

double idw_from_distances(std::span<const double> distances_m,
                          std::span<const double> values, double power) {
  if (distances_m.empty()) {
    throw Error(ErrorKind::Input, "idw: empty observation set");
  }
  if (distances_m.size() != values.size()) {
    throw Error(ErrorKind::Input, "idw: one distance per value required");
  }
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw Error(ErrorKind::Input, "idw: power must be a positive real");
  }
  for (std::size_t i = 0; i < distances_m.size(); ++i) {
    if (!std::isfinite(distances_m[i]) || distances_m[i] < 0.0) {
      throw Error(ErrorKind::Input, "idw: distances must be finite and >= 0");
    }
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::Input, "idw: values must be finite");
    }
  }

  for (std::size_t i = 0; i < distances_m.size(); ++i) {
    if (distances_m[i] < kExactDistanceM) return values[i];
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < distances_m.size(); ++i) {
    const double w = 1.0 / std::pow(distances_m[i], power);
    num += w * values[i];
    den += w;
  }
  return num / den;
}

double idw_interpolate(const GeoPoint& target,
                       std::span<const Observation> observations, double power,
                       double earth_radius_m) {
  if (observations.empty()) {
    throw Error(ErrorKind::Input, "idw: empty observation set");
  }
  std::vector<double> distances(observations.size());
  std::vector<double> values(observations.size());
  for (std::size_t i = 0; i < observations.size(); ++i) {
    distances[i] =
        great_circle_distance(target, observations[i].location, earth_radius_m);
    values[i] = observations[i].value;
  }
  return idw_from_distances(distances, values, power);
}

std::vector<FieldEstimate> interpolate_fields(
    std::span<const PathSample> path,
    std::span<const StationRecordSet> stations,
    std::span<const UtcSeconds> grid, const RunConfig& cfg,
    std::vector<std::string>* warnings, unsigned threads) {
  if (path.empty()) {
    throw Error(ErrorKind::Input, "interpolate_fields: empty path");
  }

  const std::size_t n_path = path.size();
  const std::size_t n_stations = stations.size();

  // Geometry is factor- and time-independent: one distance and one weight
  // per (sample, station).
  std::vector<double> distance(n_path * n_stations);
  std::vector<double> weight(n_path * n_stations);
  for (std::size_t s = 0; s < n_path; ++s) {
    for (std::size_t st = 0; st < n_stations; ++st) {
      const double d = great_circle_distance(
          path[s].point, stations[st].location, cfg.earth_radius_m);
      distance[s * n_stations + st] = d;
      weight[s * n_stations + st] =
          d < kExactDistanceM ? 0.0 : 1.0 / std::pow(d, cfg.idw_power);
    }
  }

  std::vector<MeteoFactor> active;
  for (const MeteoFactor f : kAllFactors) {
    bool any = false;
    for (const auto& station : stations) {
      const auto it = station.series.find(f);
      if (it != station.series.end() && !it->second.empty()) {
        any = true;
        break;
      }
    }
    if (any) {
      active.push_back(f);
    } else if (warnings) {
      warnings->push_back("factor " + std::string(factor_name(f)) +
                          ": no station observations, dropped");
    }
  }

  // Contributing (station, value) pairs per factor per grid timestamp.
  struct FactorTable {
    MeteoFactor factor;
    std::vector<std::vector<std::pair<std::size_t, double>>> at;
  };
  std::vector<FactorTable> tables;
  tables.reserve(active.size());
  for (const MeteoFactor f : active) {
    FactorTable table{f, std::vector<std::vector<std::pair<std::size_t, double>>>(
                             grid.size())};
    for (std::size_t st = 0; st < n_stations; ++st) {
      const auto it = stations[st].series.find(f);
      if (it == stations[st].series.end()) continue;
      const TimeSeries& s = it->second;
      std::size_t g = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        while (g < grid.size() && grid[g] < s.timestamp(i)) ++g;
        if (g == grid.size() || grid[g] != s.timestamp(i)) {
          throw Error(ErrorKind::Input,
                      "interpolate_fields: station " + stations[st].station_id +
                          " series is not on the shared grid");
        }
        table.at[g].emplace_back(st, s.value(i));
      }
    }
    tables.push_back(std::move(table));
  }

  std::vector<FieldEstimate> out(n_path * tables.size());
  parallel_for(n_path, threads, [&](std::size_t s) {
    for (std::size_t fi = 0; fi < tables.size(); ++fi) {
      const FactorTable& table = tables[fi];
      std::vector<UtcSeconds> timestamps;
      std::vector<double> values;
      timestamps.reserve(grid.size());
      values.reserve(grid.size());
      std::size_t gaps = 0;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto& contributors = table.at[g];
        if (contributors.empty()) {
          ++gaps;
          continue;
        }
        double estimate = 0.0;
        bool exact = false;
        for (const auto& [st, z] : contributors) {
          if (distance[s * n_stations + st] < kExactDistanceM) {
            estimate = z;
            exact = true;
            break;
          }
        }
        if (!exact) {
          double num = 0.0;
          double den = 0.0;
          for (const auto& [st, z] : contributors) {
            const double w = weight[s * n_stations + st];
            num += w * z;
            den += w;
          }
          estimate = num / den;
        }
        timestamps.push_back(grid[g]);
        values.push_back(estimate);
      }
      FieldEstimate est;
      est.sample_index = path[s].index;
      est.factor = table.factor;
      est.series = TimeSeries(std::move(timestamps), std::move(values));
      est.gap_count = gaps;
      out[s * tables.size() + fi] = std::move(est);
    }
  });
  return out;
}

}  // namespace elpath

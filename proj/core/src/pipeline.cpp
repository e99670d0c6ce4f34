#include "elpath/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elpath/correlate.hpp"
#include "elpath/csv.hpp"
#include "elpath/ingest.hpp"
#include "elpath/interpolate.hpp"
#include "elpath/preprocess.hpp"
#include "elpath/svg.hpp"

namespace elpath {

namespace {

// Tags escaping errors with the pipeline stage that raised them; inner
// stages win because the tag is only set once.
template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(name);
    throw;
  }
}

void write_profile_csv(const std::filesystem::path& file,
                       const CorrelationProfile& profile) {
  CsvWriter out(file);
  out.write_row({"sample_index", "factor", "r", "n_pairs"});
  for (const ProfileCell& cell : profile.cells) {
    out.write_row({std::to_string(cell.sample_index),
                   std::string(factor_name(cell.factor)),
                   cell.defined ? format_double(cell.r) : std::string(),
                   std::to_string(cell.n_pairs)});
  }
}

void write_summary_csv(const std::filesystem::path& file,
                       const ProfileSummary& summary) {
  CsvWriter out(file);
  out.write_row({"factor", "mean_r", "std_r", "n_points"});
  for (const FactorSummary& fs : summary.factors) {
    out.write_row({std::string(factor_name(fs.factor)),
                   fs.n_points >= 1 ? format_double(fs.mean_r) : std::string(),
                   fs.std_r ? format_double(*fs.std_r) : std::string(),
                   std::to_string(fs.n_points)});
  }
}

void write_dtoa_csv(const std::filesystem::path& file, const TimeSeries& dtoa) {
  CsvWriter out(file);
  out.write_row({"timestamp", "dtoa_us"});
  for (std::size_t i = 0; i < dtoa.size(); ++i) {
    out.write_row(
        {format_iso8601_utc(dtoa.timestamp(i)), format_double(dtoa.value(i))});
  }
}

void write_fields_csv(const std::filesystem::path& file,
                      std::span<const FieldEstimate> fields) {
  CsvWriter out(file);
  out.write_row({"sample_index", "factor", "timestamp", "value"});
  for (const FieldEstimate& field : fields) {
    for (std::size_t i = 0; i < field.series.size(); ++i) {
      out.write_row({std::to_string(field.sample_index),
                     std::string(factor_name(field.factor)),
                     format_iso8601_utc(field.series.timestamp(i)),
                     format_double(field.series.value(i))});
    }
  }
}

}  // namespace

RunReport run_analyze(const RunConfig& config,
                      const std::filesystem::path& toa_path,
                      const std::filesystem::path& stations_dir,
                      const std::filesystem::path& out_dir,
                      const AnalyzeOptions& options) {
  RunReport report;
  report.config = config;

  stage("config", [&] { config.validate(); });
  const std::size_t scatter_point = stage("config", [&] {
    const std::size_t n = static_cast<std::size_t>(config.n_samples);
    const std::size_t point =
        options.scatter_point == 0 ? n : options.scatter_point;
    if (point < 1 || point > n) {
      throw Error(ErrorKind::Config,
                  "scatter point " + std::to_string(point) +
                      " is outside [1, " + std::to_string(n) + "]");
    }
    return point;
  });

  // Ingest.
  const std::vector<ToaRecord> toa_records =
      stage("ingest", [&] { return read_toa_csv(toa_path); });
  std::vector<StationRecordSet> stations = stage("ingest", [&] {
    return load_station_dir(stations_dir, &report.warnings);
  });
  report.counts.emplace_back("toa_rows_read",
                             static_cast<std::int64_t>(toa_records.size()));
  report.counts.emplace_back("stations_listed",
                             static_cast<std::int64_t>(stations.size()));

  // Path geometry.
  const std::vector<PathSample> path = stage("path", [&] {
    return sample_path(config.tx, config.rx, config.n_samples,
                       config.earth_radius_m);
  });
  report.path_length_m = path.back().arc_distance_m;

  // Station roster and distance cutoff.
  std::vector<StationRecordSet> used_stations;
  stage("path", [&] {
    for (auto& station : stations) {
      double min_distance = std::numeric_limits<double>::infinity();
      for (const PathSample& sample : path) {
        min_distance = std::min(min_distance,
                                great_circle_distance(station.location,
                                                      sample.point,
                                                      config.earth_radius_m));
      }
      StationRosterEntry entry;
      entry.station_id = station.station_id;
      entry.location = station.location;
      entry.min_distance_to_path_m = min_distance;
      entry.used = min_distance <= config.station_max_distance_m;
      if (entry.used) {
        used_stations.push_back(std::move(station));
      } else {
        report.warnings.push_back(
            "station " + entry.station_id + " excluded: " +
            format_double(std::round(min_distance)) +
            " m from the path exceeds the " +
            format_double(config.station_max_distance_m) + " m limit");
      }
      report.roster.push_back(std::move(entry));
    }
    if (used_stations.empty()) {
      throw Error(ErrorKind::Data,
                  "no station lies within " +
                      format_double(config.station_max_distance_m) +
                      " m of the propagation path");
    }
  });
  report.counts.emplace_back("stations_used",
                             static_cast<std::int64_t>(used_stations.size()));

  // Arrival-time preprocessing.
  const TimeSeries dtoa_raw = stage("preprocess", [&] {
    if (toa_records.empty()) {
      throw Error(ErrorKind::Data, "arrival-time file has no rows");
    }
    return to_time_series(toa_records);
  });
  const TimeSeries dtoa_processed = stage("preprocess", [&] {
    return delta_toa(dtoa_raw, config.outlier_k, config.ma_window_s,
                     config.ma_centered);
  });
  report.counts.emplace_back(
      "toa_outliers_removed",
      static_cast<std::int64_t>(dtoa_raw.size() - dtoa_processed.size()));

  // Shared grid from the processed arrival times; stations snap onto it
  // individually so per-timestamp coverage can vary (gaps are allowed and
  // handled pairwise downstream).
  TimeSeries dtoa;
  std::vector<UtcSeconds> grid;
  std::int64_t observations_read = 0;
  std::int64_t observations_on_grid = 0;
  stage("align", [&] {
    dtoa = std::move(
        align(std::span<const TimeSeries>(&dtoa_processed, 1),
              config.resample_step_s)[0]);
    grid.assign(dtoa.timestamps().begin(), dtoa.timestamps().end());
    const std::int64_t tolerance = config.resample_step_s / 2;
    bool any_on_grid = false;
    for (StationRecordSet& station : used_stations) {
      std::map<MeteoFactor, TimeSeries> snapped;
      for (const auto& [factor, series] : station.series) {
        observations_read += static_cast<std::int64_t>(series.size());
        TimeSeries on_grid = snap_to_grid(series, grid, tolerance);
        observations_on_grid += static_cast<std::int64_t>(on_grid.size());
        if (!on_grid.empty()) any_on_grid = true;
        snapped.emplace(factor, std::move(on_grid));
      }
      station.series = std::move(snapped);
    }
    if (!any_on_grid) {
      throw Error(ErrorKind::Alignment,
                  "no common timestamp grid: no station observation falls "
                  "within " +
                      std::to_string(tolerance) +
                      " s of any arrival-time grid point");
    }
  });
  report.counts.emplace_back("grid_points",
                             static_cast<std::int64_t>(grid.size()));
  report.counts.emplace_back("station_observations_read", observations_read);
  report.counts.emplace_back("station_observations_on_grid",
                             observations_on_grid);

  // Fields along the path.
  const std::vector<FieldEstimate> fields = stage("interpolate", [&] {
    return interpolate_fields(path, used_stations, grid, config,
                              &report.warnings, options.threads);
  });
  std::int64_t gap_total = 0;
  for (const FieldEstimate& field : fields) {
    gap_total += static_cast<std::int64_t>(field.gap_count);
  }
  report.counts.emplace_back("field_estimates",
                             static_cast<std::int64_t>(fields.size()));
  report.counts.emplace_back("field_gaps", gap_total);

  // Correlation profile and summary.
  report.profile = stage("correlate", [&] {
    return correlation_profile(dtoa, fields, options.threads);
  });
  report.summary = stage("correlate", [&] {
    return summarize(report.profile, config.population_std);
  });
  std::int64_t defined = 0;
  for (const ProfileCell& cell : report.profile.cells) {
    if (cell.defined) ++defined;
  }
  report.counts.emplace_back(
      "profile_cells", static_cast<std::int64_t>(report.profile.cells.size()));
  report.counts.emplace_back("profile_cells_defined", defined);

  // Outputs last, so failed runs leave nothing behind; a failed write
  // removes whatever was already written.
  std::vector<std::filesystem::path> written;
  try {
    stage("output", [&] {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) {
        throw Error(ErrorKind::Io, "cannot create output directory '" +
                                       out_dir.string() + "': " + ec.message());
      }
      const auto emit = [&](const std::filesystem::path& file,
                            const auto& writer) {
        written.push_back(file);
        writer(file);
      };
      emit(out_dir / "profile.csv",
           [&](const auto& f) { write_profile_csv(f, report.profile); });
      emit(out_dir / "summary.csv",
           [&](const auto& f) { write_summary_csv(f, report.summary); });
      emit(out_dir / "dtoa.csv", [&](const auto& f) { write_dtoa_csv(f, dtoa); });
      if (options.dump_fields) {
        emit(out_dir / "fields.csv",
             [&](const auto& f) { write_fields_csv(f, fields); });
      }
      emit(out_dir / "dtoa.svg", [&](const auto& f) { write_dtoa_svg(f, dtoa); });
      std::vector<FieldEstimate> at_point;
      for (const FieldEstimate& field : fields) {
        if (field.sample_index == scatter_point) at_point.push_back(field);
      }
      emit(out_dir / "scatter.svg", [&](const auto& f) {
        write_scatter_svg(f, dtoa, at_point, report.profile, scatter_point,
                          static_cast<std::size_t>(config.n_samples));
      });
      emit(out_dir / "profile.svg",
           [&](const auto& f) { write_profile_svg(f, report.profile); });
      emit(out_dir / "report.json", [&](const auto& f) {
        std::ofstream out(f, std::ios::binary);
        if (!out) {
          throw Error(ErrorKind::Io, "cannot write '" + f.string() + "'");
        }
        out << report.to_json_text();
      });
    });
  } catch (...) {
    for (const auto& file : written) {
      std::error_code ec;
      std::filesystem::remove(file, ec);
    }
    throw;
  }
  return report;
}

SynthOutputs run_synth(const SynthScenario& scenario,
                       const std::filesystem::path& out_dir) {
  return stage("synth", [&] { return generate(scenario, out_dir); });
}

int exit_code_for(const Error& error) {
  switch (error.kind()) {
    case ErrorKind::Config:
      return 2;
    case ErrorKind::Parse:
    case ErrorKind::Data:
    case ErrorKind::Io:
      return 3;
    case ErrorKind::Alignment:
      return 4;
    case ErrorKind::Correlation:
      return 5;
    case ErrorKind::Input:
    case ErrorKind::Domain:
      break;
  }
  const std::string& s = error.stage();
  if (s == "config" || s == "path" || s == "synth") return 2;
  if (s == "ingest" || s == "preprocess") return 3;
  if (s == "align") return 4;
  if (s == "correlate") return 5;
  return 1;
}

}  // namespace elpath

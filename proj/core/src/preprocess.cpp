#include "elpath/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "elpath/errors.hpp"

namespace elpath {

namespace {

constexpr double kMadScale = 1.4826;  // makes MAD consistent with sigma for normals

double median_of_sorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

// Type-7 quantile: linear interpolation at h = (n-1)p.
double quantile_of_sorted(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// Index of the sample nearest to t within tolerance (inclusive), ties
// resolved to the earlier sample; nullopt when nothing qualifies.
std::optional<std::size_t> nearest_within(const TimeSeries& s, UtcSeconds t,
                                          std::int64_t tolerance_s) {
  const auto& ts = s.timestamps();
  const auto it = std::lower_bound(ts.begin(), ts.end(), t);
  std::optional<std::size_t> best;
  UtcSeconds best_dist = std::numeric_limits<UtcSeconds>::max();
  if (it != ts.begin()) {
    const auto i = static_cast<std::size_t>(it - ts.begin()) - 1;
    best_dist = t - ts[i];
    best = i;
  }
  if (it != ts.end()) {
    const auto i = static_cast<std::size_t>(it - ts.begin());
    const UtcSeconds dist = ts[i] - t;
    if (dist < best_dist) {  // strict: equal keeps the earlier sample
      best_dist = dist;
      best = i;
    }
  }
  if (!best || best_dist > tolerance_s) return std::nullopt;
  return best;
}

}  // namespace

TimeSeries remove_outliers(const TimeSeries& s, double k) {
  if (s.empty()) {
    throw Error(ErrorKind::Input, "remove_outliers: empty series");
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorKind::Input, "remove_outliers: k must be a positive real");
  }

  std::vector<double> sorted(s.values().begin(), s.values().end());
  std::sort(sorted.begin(), sorted.end());
  const double median = median_of_sorted(sorted);

  std::vector<double> deviations(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    deviations[i] = std::abs(sorted[i] - median);
  }
  std::sort(deviations.begin(), deviations.end());
  const double mad = kMadScale * median_of_sorted(deviations);

  double lo, hi;
  if (mad > 0.0) {
    lo = median - k * mad;
    hi = median + k * mad;
  } else {
    const double q1 = quantile_of_sorted(sorted, 0.25);
    const double q3 = quantile_of_sorted(sorted, 0.75);
    const double iqr = q3 - q1;
    lo = q1 - 1.5 * iqr;
    hi = q3 + 1.5 * iqr;
  }

  std::vector<UtcSeconds> timestamps;
  std::vector<double> values;
  timestamps.reserve(s.size());
  values.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = s.value(i);
    if (v >= lo && v <= hi) {
      timestamps.push_back(s.timestamp(i));
      values.push_back(v);
    }
  }
  return TimeSeries(std::move(timestamps), std::move(values));
}

TimeSeries demean(const TimeSeries& s) {
  if (s.empty()) {
    throw Error(ErrorKind::Input, "demean: empty series");
  }
  // Constant series short-circuit: the mean is the constant itself, exactly,
  // which a floating-point sum of n copies would not deliver.
  const auto [min_it, max_it] =
      std::minmax_element(s.values().begin(), s.values().end());
  const double mean =
      *min_it == *max_it
          ? *min_it
          : std::accumulate(s.values().begin(), s.values().end(), 0.0) /
                static_cast<double>(s.size());
  std::vector<double> values(s.values().begin(), s.values().end());
  for (double& v : values) v -= mean;
  return TimeSeries(std::vector<UtcSeconds>(s.timestamps().begin(),
                                            s.timestamps().end()),
                    std::move(values));
}

TimeSeries moving_average(const TimeSeries& s, std::int64_t window_s,
                          bool centered) {
  if (s.empty()) {
    throw Error(ErrorKind::Input, "moving_average: empty series");
  }
  if (window_s <= 0) {
    throw Error(ErrorKind::Input, "moving_average: window must be positive");
  }

  const auto& ts = s.timestamps();
  std::vector<double> values(s.size());
  std::size_t lo = 0, hi = 0;  // half-open [lo, hi) window over sample indices
  for (std::size_t i = 0; i < s.size(); ++i) {
    // |u - t| <= w/2 on an integer grid reduces to the floor-divided bounds
    // for either parity of w.
    UtcSeconds from, to;
    if (centered) {
      from = ts[i] - window_s / 2;
      to = ts[i] + window_s / 2;
    } else {
      from = ts[i] - window_s + 1;
      to = ts[i];
    }
    while (hi < s.size() && ts[hi] <= to) ++hi;
    while (lo < hi && ts[lo] < from) ++lo;
    // Per-window sum of offsets from the window's first sample: a sliding
    // sum drifts under cancellation, and the shifted form makes constant
    // stretches average to exactly their value.
    const double base = s.value(lo);
    double sum = 0.0;
    for (std::size_t j = lo; j < hi; ++j) sum += s.value(j) - base;
    values[i] = base + sum / static_cast<double>(hi - lo);
  }
  return TimeSeries(std::vector<UtcSeconds>(ts.begin(), ts.end()),
                    std::move(values));
}

TimeSeries snap_to_grid(const TimeSeries& s, std::span<const UtcSeconds> grid,
                        std::int64_t tolerance_s) {
  if (tolerance_s < 0) {
    throw Error(ErrorKind::Input, "snap_to_grid: negative tolerance");
  }
  std::vector<UtcSeconds> timestamps;
  std::vector<double> values;
  for (const UtcSeconds t : grid) {
    if (const auto idx = nearest_within(s, t, tolerance_s)) {
      timestamps.push_back(t);
      values.push_back(s.value(*idx));
    }
  }
  return TimeSeries(std::move(timestamps), std::move(values));
}

std::vector<TimeSeries> align(std::span<const TimeSeries> series,
                              std::int64_t step_s,
                              std::span<const std::string> labels) {
  if (series.empty()) {
    throw Error(ErrorKind::Input, "align: at least one series required");
  }
  if (step_s <= 0) {
    throw Error(ErrorKind::Input, "align: step must be positive");
  }
  if (!labels.empty() && labels.size() != series.size()) {
    throw Error(ErrorKind::Input, "align: one label per series required");
  }
  const auto label = [&](std::size_t i) {
    return labels.empty() ? "series " + std::to_string(i)
                          : std::string(labels[i]);
  };

  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].empty()) {
      throw Error(ErrorKind::Alignment,
                  "no common timestamp grid: " + label(i) + " is empty");
    }
  }

  UtcSeconds anchor = std::numeric_limits<UtcSeconds>::min();
  UtcSeconds end = std::numeric_limits<UtcSeconds>::max();
  for (const TimeSeries& s : series) {
    anchor = std::max(anchor, s.timestamp(0));
    end = std::min(end, s.timestamp(s.size() - 1));
  }

  // On an integer grid "within step/2" reduces to the floor-divided bound
  // for either parity of step.
  const std::int64_t tolerance = step_s / 2;

  std::vector<UtcSeconds> grid;
  std::vector<std::vector<double>> matched(series.size());
  std::vector<std::size_t> hit_counts(series.size(), 0);
  std::vector<std::size_t> indices(series.size());
  for (UtcSeconds t = anchor; t <= end; t += step_s) {
    bool all = true;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const auto idx = nearest_within(series[i], t, tolerance);
      if (!idx) {
        all = false;
      } else {
        ++hit_counts[i];
        indices[i] = *idx;
      }
    }
    if (!all) continue;
    grid.push_back(t);
    for (std::size_t i = 0; i < series.size(); ++i) {
      matched[i].push_back(series[i].value(indices[i]));
    }
  }

  if (grid.empty()) {
    // Name the series with the fewest candidate-grid hits; when the ranges
    // never overlapped at all, fall back to the shortest time span.
    std::size_t worst = 0;
    if (anchor <= end) {
      for (std::size_t i = 1; i < series.size(); ++i) {
        if (hit_counts[i] < hit_counts[worst]) worst = i;
      }
    } else {
      UtcSeconds worst_span = std::numeric_limits<UtcSeconds>::max();
      for (std::size_t i = 0; i < series.size(); ++i) {
        const UtcSeconds span =
            series[i].timestamp(series[i].size() - 1) - series[i].timestamp(0);
        if (span < worst_span) {
          worst_span = span;
          worst = i;
        }
      }
    }
    throw Error(ErrorKind::Alignment,
                "no common timestamp grid: " + label(worst) +
                    " has the least coverage");
  }

  std::vector<TimeSeries> out;
  out.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    out.emplace_back(std::vector<UtcSeconds>(grid), std::move(matched[i]));
  }
  return out;
}

TimeSeries delta_toa(const TimeSeries& toa, double outlier_k,
                     std::int64_t ma_window_s, bool centered) {
  return moving_average(demean(remove_outliers(toa, outlier_k)), ma_window_s,
                        centered);
}

}  // namespace elpath

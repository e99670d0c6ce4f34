#include "elpath/correlate.hpp"

#include <algorithm>
#include <cmath>

#include "elpath/errors.hpp"
#include "elpath/parallel.hpp"

namespace elpath {

namespace {

struct PairedStats {
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

PairedStats centered_sums(std::span<const double> a,
                          std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  PairedStats s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    s.sxx += da * da;
    s.syy += db * db;
    s.sxy += da * db;
  }
  return s;
}

// Shared timestamps of two sorted series, paired values out.
void intersect_pairs(const TimeSeries& a, const TimeSeries& b,
                     std::vector<double>& va, std::vector<double>& vb) {
  va.clear();
  vb.clear();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const UtcSeconds ta = a.timestamp(i);
    const UtcSeconds tb = b.timestamp(j);
    if (ta < tb) {
      ++i;
    } else if (tb < ta) {
      ++j;
    } else {
      va.push_back(a.value(i));
      vb.push_back(b.value(j));
      ++i;
      ++j;
    }
  }
}

}  // namespace

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::Input, "pearson: sequence lengths differ");
  }
  if (a.size() < 3) {
    throw Error(ErrorKind::Input, "pearson: need at least 3 pairs");
  }
  const PairedStats s = centered_sums(a, b);
  if (s.sxx == 0.0 || s.syy == 0.0) {
    throw Error(ErrorKind::Correlation,
                "pearson: zero variance makes the correlation undefined");
  }
  const double r = s.sxy / (std::sqrt(s.sxx) * std::sqrt(s.syy));
  return std::clamp(r, -1.0, 1.0);
}

const ProfileCell* CorrelationProfile::find(std::size_t sample_index,
                                            MeteoFactor factor) const {
  for (const ProfileCell& cell : cells) {
    if (cell.sample_index == sample_index && cell.factor == factor) {
      return &cell;
    }
  }
  return nullptr;
}

CorrelationProfile correlation_profile(const TimeSeries& dtoa,
                                       std::span<const FieldEstimate> fields,
                                       unsigned threads) {
  CorrelationProfile profile;
  profile.cells.resize(fields.size());
  parallel_for(fields.size(), threads, [&](std::size_t i) {
    const FieldEstimate& field = fields[i];
    ProfileCell& cell = profile.cells[i];
    cell.sample_index = field.sample_index;
    cell.factor = field.factor;

    std::vector<double> a;
    std::vector<double> b;
    intersect_pairs(dtoa, field.series, a, b);
    cell.n_pairs = a.size();
    if (cell.n_pairs < 3) {
      cell.reason = "fewer than 3 paired samples";
      return;
    }
    const PairedStats s = centered_sums(a, b);
    if (s.sxx == 0.0) {
      cell.reason = "arrival-time deviation has zero variance over the pairs";
      return;
    }
    if (s.syy == 0.0) {
      cell.reason = "factor values have zero variance over the pairs";
      return;
    }
    cell.r = pearson(a, b);
    cell.defined = true;
  });

  const bool any_defined =
      std::any_of(profile.cells.begin(), profile.cells.end(),
                  [](const ProfileCell& c) { return c.defined; });
  if (!any_defined) {
    throw Error(ErrorKind::Correlation,
                "empty correlation profile: no (sample, factor) pair has 3 or "
                "more usable paired samples");
  }
  return profile;
}

ProfileSummary summarize(const CorrelationProfile& profile,
                         bool population_std) {
  if (profile.cells.empty()) {
    throw Error(ErrorKind::Input, "summarize: empty profile");
  }
  ProfileSummary summary;
  for (const MeteoFactor factor : kAllFactors) {
    bool present = false;
    std::vector<double> rs;
    for (const ProfileCell& cell : profile.cells) {
      if (cell.factor != factor) continue;
      present = true;
      if (cell.defined) rs.push_back(cell.r);
    }
    if (!present) continue;

    FactorSummary fs;
    fs.factor = factor;
    fs.n_points = rs.size();
    if (!rs.empty()) {
      double mean = 0.0;
      for (const double r : rs) mean += r;
      mean /= static_cast<double>(rs.size());
      fs.mean_r = mean;
      if (rs.size() >= 2) {
        double ss = 0.0;
        for (const double r : rs) ss += (r - mean) * (r - mean);
        const double denom = population_std
                                 ? static_cast<double>(rs.size())
                                 : static_cast<double>(rs.size() - 1);
        fs.std_r = std::sqrt(ss / denom);
      }
    }
    summary.factors.push_back(fs);
  }
  return summary;
}

}  // namespace elpath

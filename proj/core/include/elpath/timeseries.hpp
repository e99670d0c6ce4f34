#pragma once

#include <cstddef>
#include <vector>

#include "elpath/time.hpp"

namespace elpath {

/// Uniformly typed timestamp/value pairs: the currency every pipeline
/// stage trades in. Timestamps are strictly increasing, values finite;
/// gaps are simply absent timestamps.
class TimeSeries {
 public:
  TimeSeries() = default;

  /// Validates the invariants; throws ErrorKind::Input on violation.
  TimeSeries(std::vector<UtcSeconds> timestamps, std::vector<double> values);

  std::size_t size() const { return timestamps_.size(); }
  bool empty() const { return timestamps_.empty(); }

  const std::vector<UtcSeconds>& timestamps() const { return timestamps_; }
  const std::vector<double>& values() const { return values_; }

  UtcSeconds timestamp(std::size_t i) const { return timestamps_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  bool operator==(const TimeSeries& other) const = default;

 private:
  std::vector<UtcSeconds> timestamps_;
  std::vector<double> values_;
};

}  // namespace elpath

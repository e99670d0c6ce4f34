#include "elpath/timeseries.hpp"

#include <cmath>
#include <string>

#include "elpath/errors.hpp"

namespace elpath {

TimeSeries::TimeSeries(std::vector<UtcSeconds> timestamps,
                       std::vector<double> values)
    : timestamps_(std::move(timestamps)), values_(std::move(values)) {
  if (timestamps_.size() != values_.size()) {
    throw Error(ErrorKind::Input,
                "time series length mismatch: " +
                    std::to_string(timestamps_.size()) + " timestamps vs " +
                    std::to_string(values_.size()) + " values");
  }
  for (std::size_t i = 1; i < timestamps_.size(); ++i) {
    if (timestamps_[i] <= timestamps_[i - 1]) {
      throw Error(ErrorKind::Input,
                  "timestamps not strictly increasing at position " +
                      std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::Input,
                  "non-finite value at position " + std::to_string(i));
    }
  }
}

}  // namespace elpath

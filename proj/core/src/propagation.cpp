#include "elpath/propagation.hpp"

#include <cmath>
#include <string>

#include "elpath/errors.hpp"

namespace elpath {

RefractivityProfile::RefractivityProfile(std::vector<double> n_units,
                                         bool allow_implausible)
    : values_(std::move(n_units)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double n = values_[i];
    if (!std::isfinite(n)) {
      throw Error(ErrorKind::Input, "refractivity profile: value " +
                                        std::to_string(i) + " is not finite");
    }
    if (!allow_implausible && (n < 100.0 || n > 500.0)) {
      throw Error(ErrorKind::Input,
                  "refractivity profile: value " + std::to_string(i) + " (" +
                      std::to_string(n) +
                      " N-units) is outside the plausible range [100, 500]");
    }
  }
}

double refractivity(double temperature_k, double pressure_hpa,
                    double vapor_pressure_hpa) {
  if (!(temperature_k > 0.0)) {
    throw Error(ErrorKind::Domain,
                "refractivity: temperature must be positive kelvin");
  }
  if (pressure_hpa < 0.0 || vapor_pressure_hpa < 0.0) {
    throw Error(ErrorKind::Input,
                "refractivity: pressures must be non-negative");
  }
  return 77.6 * pressure_hpa / temperature_k +
         3.73e5 * vapor_pressure_hpa / (temperature_k * temperature_k);
}

double refractive_index(double n_units) { return 1.0 + n_units * 1.0e-6; }

double primary_factor(const RefractivityProfile& profile,
                      std::span<const PathSample> path,
                      const PhysConstants& k) {
  if (path.size() < 2) {
    throw Error(ErrorKind::Input, "primary_factor: path needs >= 2 samples");
  }
  if (profile.size() != path.size()) {
    throw Error(ErrorKind::Input,
                "primary_factor: profile has " +
                    std::to_string(profile.size()) + " values for " +
                    std::to_string(path.size()) + " path samples");
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double ds = path[i].arc_distance_m - path[i - 1].arc_distance_m;
    const double n_mid =
        0.5 * (refractive_index(profile[i - 1]) + refractive_index(profile[i]));
    integral += n_mid * ds;
  }
  return integral / k.c_mps;
}

double secondary_factor_us(std::complex<double> w, const PhysConstants& k) {
  if (w == std::complex<double>(0.0, 0.0)) {
    throw Error(ErrorKind::Domain,
                "secondary factor: phase of zero is undefined");
  }
  // std::arg returns (−π, π]; −π can only appear via signed zero, which the
  // w != 0 guard does not exclude, so fold it back.
  double phase = std::arg(w);
  if (phase == -std::numbers::pi) phase = std::numbers::pi;
  return 1.0e6 * phase / k.omega_rad_s;
}

}  // namespace elpath

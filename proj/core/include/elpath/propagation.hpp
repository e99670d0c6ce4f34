#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "elpath/geodesy.hpp"

namespace elpath {

struct PhysConstants {
  double c_mps = 299792458.0;                             // vacuum speed of light
  double omega_rad_s = 2.0 * std::numbers::pi * 1.0e5;    // 100 kHz carrier
};

/// TOA = t_p + t_r; t_r is a fixed per-campaign receiver processing delay.
struct ToaModel {
  double t_p_s = 0.0;
  double t_r_s = 0.0;
  double toa_s() const { return t_p_s + t_r_s; }
};

/// t_p split into the free-space term, the surface phase term, and the
/// additional land delay; total_s() reconstructs t_p exactly by construction.
struct DelayDecomposition {
  double pf_s = 0.0;
  double sf_s = 0.0;
  double asf_s = 0.0;
  double total_s() const { return pf_s + sf_s + asf_s; }
};

/// Refractivity in N-units at each path sample. Values must be finite and,
/// unless allow_implausible is set, inside a loose physical envelope of
/// [100, 500] N-units; set the flag for reference cases such as vacuum.
class RefractivityProfile {
 public:
  explicit RefractivityProfile(std::vector<double> n_units,
                               bool allow_implausible = false);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// N = 77.6 P/T + 3.73e5 e_w/T² with T in kelvin and pressures in hPa.
double refractivity(double temperature_k, double pressure_hpa,
                    double vapor_pressure_hpa);

/// n = 1 + N·1e-6.
double refractive_index(double n_units);

/// Trapezoidal ∫ n/c ds over the path's arc distances, in seconds.
double primary_factor(const RefractivityProfile& profile,
                      std::span<const PathSample> path,
                      const PhysConstants& k = {});

/// 1e6 · arg(W) / ω, in microseconds, with arg in (−π, π].
double secondary_factor_us(std::complex<double> w,
                           const PhysConstants& k = {});

}  // namespace elpath

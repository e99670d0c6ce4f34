#pragma once

#include <vector>

namespace elpath {

inline constexpr double kDefaultEarthRadiusM = 6371000.0;

/// Geographic position on the spherical Earth model.
struct GeoPoint {
  double lat_deg = 0.0;  // [-90, 90]
  double lon_deg = 0.0;  // [-180, 180)

  bool operator==(const GeoPoint&) const = default;
};

/// Maps an arbitrary finite longitude into [-180, 180).
double normalize_lon_deg(double lon_deg);

/// Validating constructor: finite values, latitude range, longitude
/// normalized. Throws ErrorKind::Input.
GeoPoint make_geo_point(double lat_deg, double lon_deg);

/// One of the n equally spaced positions on the transmitter->receiver arc.
/// Index 1 is the transmitter (arc distance 0); index n is the receiver.
struct PathSample {
  int index = 0;  // 1-based
  GeoPoint point;
  double arc_distance_m = 0.0;
};

/// Great-circle distance in meters on a sphere of the given radius.
/// Symmetric, non-negative; throws ErrorKind::Input on non-finite or
/// out-of-range coordinates.
double great_circle_distance(const GeoPoint& a, const GeoPoint& b,
                             double earth_radius_m = kDefaultEarthRadiusM);

/// Samples the great-circle arc from tx to rx at n equally spaced points
/// (spherical linear interpolation between the endpoint unit vectors).
/// Requires n >= 2 and tx != rx; antipodal endpoints are rejected because
/// the connecting arc is not unique.
std::vector<PathSample> sample_path(const GeoPoint& tx, const GeoPoint& rx,
                                    int n,
                                    double earth_radius_m = kDefaultEarthRadiusM);

}  // namespace elpath

#include "elpath/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elpath/errors.hpp"

namespace elpath {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct Vec3 {
  double x, y, z;
};

Vec3 to_unit_vector(const GeoPoint& p) {
  const double lat = p.lat_deg * kDegToRad;
  const double lon = p.lon_deg * kDegToRad;
  const double cos_lat = std::cos(lat);
  return {cos_lat * std::cos(lon), cos_lat * std::sin(lon), std::sin(lat)};
}

GeoPoint to_geo_point(const Vec3& v) {
  const double norm = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
  const double z = std::clamp(v.z / norm, -1.0, 1.0);
  GeoPoint p;
  p.lat_deg = std::asin(z) * kRadToDeg;
  p.lon_deg = normalize_lon_deg(std::atan2(v.y, v.x) * kRadToDeg);
  return p;
}

void check_point(const GeoPoint& p, const char* what) {
  if (!std::isfinite(p.lat_deg) || !std::isfinite(p.lon_deg)) {
    throw Error(ErrorKind::Input,
                std::string(what) + ": non-finite coordinates");
  }
  if (p.lat_deg < -90.0 || p.lat_deg > 90.0) {
    throw Error(ErrorKind::Input,
                std::string(what) + ": latitude out of [-90, 90]");
  }
  if (p.lon_deg < -180.0 || p.lon_deg > 180.0) {
    throw Error(ErrorKind::Input,
                std::string(what) + ": longitude out of [-180, 180]");
  }
}

void check_radius(double earth_radius_m) {
  if (!std::isfinite(earth_radius_m) || earth_radius_m <= 0.0) {
    throw Error(ErrorKind::Input, "earth radius must be positive and finite");
  }
}

}  // namespace

double normalize_lon_deg(double lon_deg) {
  double lon = std::fmod(lon_deg, 360.0);
  if (lon >= 180.0) lon -= 360.0;
  if (lon < -180.0) lon += 360.0;
  return lon;
}

GeoPoint make_geo_point(double lat_deg, double lon_deg) {
  if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg)) {
    throw Error(ErrorKind::Input, "non-finite coordinates");
  }
  if (lat_deg < -90.0 || lat_deg > 90.0) {
    throw Error(ErrorKind::Input, "latitude out of [-90, 90]");
  }
  return GeoPoint{lat_deg, normalize_lon_deg(lon_deg)};
}

double great_circle_distance(const GeoPoint& a, const GeoPoint& b,
                             double earth_radius_m) {
  check_point(a, "point a");
  check_point(b, "point b");
  check_radius(earth_radius_m);

  // Haversine: numerically stable for both short and antipodal arcs.
  const double lat1 = a.lat_deg * kDegToRad;
  const double lat2 = b.lat_deg * kDegToRad;
  const double dlat = (b.lat_deg - a.lat_deg) * kDegToRad;
  const double dlon = (b.lon_deg - a.lon_deg) * kDegToRad;

  const double sin_dlat = std::sin(dlat * 0.5);
  const double sin_dlon = std::sin(dlon * 0.5);
  const double h = sin_dlat * sin_dlat +
                   std::cos(lat1) * std::cos(lat2) * sin_dlon * sin_dlon;
  const double c = 2.0 * std::atan2(std::sqrt(h), std::sqrt(std::max(0.0, 1.0 - h)));
  return earth_radius_m * c;
}

std::vector<PathSample> sample_path(const GeoPoint& tx, const GeoPoint& rx,
                                    int n, double earth_radius_m) {
  check_point(tx, "tx");
  check_point(rx, "rx");
  check_radius(earth_radius_m);
  if (n < 2) {
    throw Error(ErrorKind::Input, "sample count must be at least 2");
  }
  if (tx.lat_deg == rx.lat_deg && tx.lon_deg == rx.lon_deg) {
    throw Error(ErrorKind::Input,
                "degenerate path: transmitter and receiver coincide");
  }

  const Vec3 v1 = to_unit_vector(tx);
  const Vec3 v2 = to_unit_vector(rx);
  const double dot = v1.x * v2.x + v1.y * v2.y + v1.z * v2.z;
  const Vec3 cross{v1.y * v2.z - v1.z * v2.y, v1.z * v2.x - v1.x * v2.z,
                   v1.x * v2.y - v1.y * v2.x};
  const double cross_norm =
      std::sqrt(cross.x * cross.x + cross.y * cross.y + cross.z * cross.z);
  const double omega = std::atan2(cross_norm, dot);  // arc angle in (0, pi]

  if (omega <= 0.0) {
    throw Error(ErrorKind::Input,
                "degenerate path: transmitter and receiver coincide");
  }
  if (std::numbers::pi - omega < 1e-9) {
    throw Error(ErrorKind::Input,
                "degenerate path: endpoints are antipodal, arc not unique");
  }

  const double total = earth_radius_m * omega;
  const double sin_omega = std::sin(omega);

  std::vector<PathSample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    PathSample s;
    s.index = i + 1;
    s.arc_distance_m = total * t;
    if (i == 0) {
      s.point = tx;
    } else if (i == n - 1) {
      s.point = rx;
    } else {
      const double w1 = std::sin((1.0 - t) * omega) / sin_omega;
      const double w2 = std::sin(t * omega) / sin_omega;
      s.point = to_geo_point({w1 * v1.x + w2 * v2.x, w1 * v1.y + w2 * v2.y,
                              w1 * v1.z + w2 * v2.z});
    }
    samples.push_back(s);
  }
  return samples;
}

}  // namespace elpath

#pragma once

#include <span>

#include "cbrs/geodetic.hpp"
#include "cbrs/planar.hpp"

namespace cbrs {

// WGS84 / UTM constants
inline constexpr double kWgs84SemiMajorM = 6378137.0;
inline constexpr double kWgs84Flattening = 1.0 / 298.257223563;
inline constexpr double kUtmScaleFactor = 0.9996;
inline constexpr double kUtmFalseEastingM = 500000.0;
inline constexpr double kUtmFalseNorthingSouthM = 10000000.0;
inline constexpr double kEarthMeanRadiusM = 6371008.8;

enum class Hemisphere { north, south };

struct UtmZone {
  int zone = 0;  // 1..60
  Hemisphere hemisphere = Hemisphere::north;

  friend bool operator==(const UtmZone&, const UtmZone&) = default;
};

struct UtmPoint {
  double easting_m = 0.0;
  double northing_m = 0.0;
  int zone = 0;
  Hemisphere hemisphere = Hemisphere::north;
};

/// Central meridian of a UTM zone, degrees east.
double utm_central_meridian_deg(int zone);

/// Zone and hemisphere of the coordinate-mean centroid of the points. All
/// points of one tract or city are meant to be projected in this one zone.
UtmZone select_utm_zone(std::span<const GeodeticPoint> points);

/// Transverse Mercator on the WGS84 ellipsoid (Krüger series, sixth order in
/// the third flattening). Throws std::domain_error for |lat| > 84 deg or
/// points far outside the zone.
UtmPoint geodetic_to_utm(const GeodeticPoint& p, UtmZone zone);

/// Inverse projection; round-trips with geodetic_to_utm to below 1 cm.
GeodeticPoint utm_to_geodetic(const UtmPoint& p);

/// Great-circle distance on a sphere of radius 6371008.8 m.
double haversine_distance(const GeodeticPoint& a, const GeodeticPoint& b);

inline PlanarPoint to_planar(const UtmPoint& p) { return {p.easting_m, p.northing_m}; }

} // namespace cbrs

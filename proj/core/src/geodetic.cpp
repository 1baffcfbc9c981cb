#include "cbrs/geodetic.hpp"

#include <algorithm>
#include <cmath>

namespace cbrs {

GeodeticRing normalize_ring(GeodeticRing ring) {
  if (ring.size() < 2) return ring;
  GeodeticRing out;
  out.reserve(ring.size());
  for (const auto& p : ring) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

double ring_signed_area_deg2(const GeodeticRing& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  double sum = 0.0;
  const double x0 = ring[0].lon_deg;
  const double y0 = ring[0].lat_deg;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double ax = ring[i].lon_deg - x0;
    const double ay = ring[i].lat_deg - y0;
    const double bx = ring[i + 1].lon_deg - x0;
    const double by = ring[i + 1].lat_deg - y0;
    sum += ax * by - bx * ay;
  }
  return sum / 2.0;
}

namespace {

bool seg_overlap_1d(double a, double b, double c, double d) {
  return std::max(std::min(a, b), std::min(c, d)) <=
         std::min(std::max(a, b), std::max(c, d));
}

int orientation(const GeodeticPoint& a, const GeodeticPoint& b,
                const GeodeticPoint& c) {
  const double v = (b.lon_deg - a.lon_deg) * (c.lat_deg - a.lat_deg) -
                   (b.lat_deg - a.lat_deg) * (c.lon_deg - a.lon_deg);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool segments_cross(const GeodeticPoint& a, const GeodeticPoint& b,
                    const GeodeticPoint& c, const GeodeticPoint& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    return seg_overlap_1d(a.lon_deg, b.lon_deg, c.lon_deg, d.lon_deg) &&
           seg_overlap_1d(a.lat_deg, b.lat_deg, c.lat_deg, d.lat_deg);
  }
  return false;
}

} // namespace

bool ring_self_intersects(const GeodeticRing& ring) {
  const std::size_t n = ring.size();
  if (n < 4) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const GeodeticPoint& a = ring[i];
    const GeodeticPoint& b = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      const GeodeticPoint& c = ring[j];
      const GeodeticPoint& d = ring[(j + 1) % n];
      if (std::max(c.lon_deg, d.lon_deg) < std::min(a.lon_deg, b.lon_deg) ||
          std::min(c.lon_deg, d.lon_deg) > std::max(a.lon_deg, b.lon_deg) ||
          std::max(c.lat_deg, d.lat_deg) < std::min(a.lat_deg, b.lat_deg) ||
          std::min(c.lat_deg, d.lat_deg) > std::max(a.lat_deg, b.lat_deg)) {
        continue;
      }
      if (segments_cross(a, b, c, d)) return true;
    }
  }
  return false;
}

} // namespace cbrs

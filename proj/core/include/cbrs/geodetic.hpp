#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cbrs {

/// WGS84 geodetic coordinate, degrees.
struct GeodeticPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;

  friend bool operator==(const GeodeticPoint&, const GeodeticPoint&) = default;
};

inline bool geodetic_in_range(const GeodeticPoint& p) {
  return p.lat_deg >= -90.0 && p.lat_deg <= 90.0 && p.lon_deg >= -180.0 &&
         p.lon_deg <= 180.0;
}

/// Boundary ring stored unclosed (first point is not repeated at the end) and
/// treated as cyclic.
using GeodeticRing = std::vector<GeodeticPoint>;

/// One polygon part of a tract: an outer ring plus optional interior rings
/// (holes, e.g. water bodies). Hole edges are license boundaries like the
/// outer edge.
struct TractPart {
  GeodeticRing outer;
  std::vector<GeodeticRing> holes;
};

/// One census tract: identifier, geometry parts, population count.
struct TractGeometry {
  std::string geoid;  // 11-character census tract identifier
  std::string name;
  std::vector<TractPart> parts;
  std::optional<std::int64_t> population;  // unset until joined
  bool self_intersecting = false;          // any input ring flagged on parse
};

/// Removes the duplicate closing point (if present) and collapses consecutive
/// duplicate points. The result is an unclosed ring.
GeodeticRing normalize_ring(GeodeticRing ring);

/// Signed shoelace area in degree space. Only used to reject degenerate rings;
/// the magnitude is meaningless as a surface area.
double ring_signed_area_deg2(const GeodeticRing& ring);

/// Pairwise segment check over the cyclic ring, ignoring shared endpoints of
/// adjacent segments.
bool ring_self_intersects(const GeodeticRing& ring);

} // namespace cbrs

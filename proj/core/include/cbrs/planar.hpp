#pragma once

#include <span>
#include <vector>

namespace cbrs {

/// Projected point in meters (UTM easting/northing within one zone).
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

/// Ring stored unclosed, treated as cyclic.
using PlanarRing = std::vector<PlanarPoint>;

/// Projected polygon: outer ring plus holes, all in meters.
struct PlanarPolygon {
  PlanarRing outer;
  std::vector<PlanarRing> holes;
};

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

double squared_distance(const PlanarPoint& a, const PlanarPoint& b);
double distance(const PlanarPoint& a, const PlanarPoint& b);

/// Shoelace (Green's theorem) signed area; positive for counter-clockwise.
double signed_ring_area(const PlanarRing& ring);

/// |outer| minus the sum of |holes|; orientation-independent.
double polygon_area(const PlanarPolygon& polygon);

/// Even-odd rule; points on the ring boundary count as inside.
bool point_in_ring(const PlanarPoint& p, const PlanarRing& ring);

/// Even-odd rule over outer and holes; boundary points (outer or hole edges)
/// count as inside.
bool point_in_polygon(const PlanarPoint& p, const PlanarPolygon& polygon);

double distance_to_segment(const PlanarPoint& p, const PlanarPoint& a,
                           const PlanarPoint& b);

/// Minimum Euclidean distance from p to any boundary segment (outer and
/// holes), not just to vertices.
double distance_to_boundary(const PlanarPoint& p, const PlanarPolygon& polygon);

/// True if the two closed segments share at least one point.
bool segments_intersect(const PlanarPoint& a, const PlanarPoint& b,
                        const PlanarPoint& c, const PlanarPoint& d);

/// No two non-adjacent segments of the cyclic ring touch.
bool ring_is_simple(const PlanarRing& ring);

BoundingBox bounding_box(const PlanarRing& ring);
BoundingBox bounding_box(const PlanarPolygon& polygon);

/// Bounding-box diagonal: an upper bound on the polygon diameter, used to cap
/// erosion search radii.
double polygon_diameter_bound(const PlanarPolygon& polygon);

/// Drops consecutive duplicate points (cyclically).
PlanarRing collapse_duplicates(PlanarRing ring);

} // namespace cbrs

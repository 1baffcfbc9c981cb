#include "cbrs/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbrs {

double squared_distance(const PlanarPoint& a, const PlanarPoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(const PlanarPoint& a, const PlanarPoint& b) {
  return std::sqrt(squared_distance(a, b));
}

double signed_ring_area(const PlanarRing& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  // shoelace relative to the first vertex to keep terms small
  double sum = 0.0;
  const double x0 = ring[0].x;
  const double y0 = ring[0].y;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double ax = ring[i].x - x0;
    const double ay = ring[i].y - y0;
    const double bx = ring[i + 1].x - x0;
    const double by = ring[i + 1].y - y0;
    sum += ax * by - bx * ay;
  }
  return sum / 2.0;
}

double polygon_area(const PlanarPolygon& polygon) {
  double area = std::abs(signed_ring_area(polygon.outer));
  for (const auto& hole : polygon.holes) {
    area -= std::abs(signed_ring_area(hole));
  }
  return area;
}

namespace {

bool on_segment(const PlanarPoint& p, const PlanarPoint& a, const PlanarPoint& b) {
  const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
  if (cross != 0.0) return false;
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
         p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

int orientation(const PlanarPoint& a, const PlanarPoint& b, const PlanarPoint& c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

} // namespace

bool point_in_ring(const PlanarPoint& p, const PlanarRing& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const PlanarPoint& a = ring[j];
    const PlanarPoint& b = ring[i];
    if (on_segment(p, a, b)) return true;  // boundary counts as inside
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_int = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_int) inside = !inside;
    }
  }
  return inside;
}

bool point_in_polygon(const PlanarPoint& p, const PlanarPolygon& polygon) {
  const std::size_t n_outer = polygon.outer.size();
  if (n_outer < 3) return false;
  // boundary (outer or hole edge) counts as inside; otherwise even-odd parity
  // across all rings
  bool parity = false;
  auto visit = [&](const PlanarRing& ring) -> bool {
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const PlanarPoint& a = ring[j];
      const PlanarPoint& b = ring[i];
      if (on_segment(p, a, b)) return true;
      if ((a.y > p.y) != (b.y > p.y)) {
        const double x_int = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
        if (p.x < x_int) parity = !parity;
      }
    }
    return false;
  };
  if (visit(polygon.outer)) return true;
  for (const auto& hole : polygon.holes) {
    if (visit(hole)) return true;
  }
  return parity;
}

double distance_to_segment(const PlanarPoint& p, const PlanarPoint& a,
                           const PlanarPoint& b) {
  const double abx = b.x - a.x;
  const double aby = b.y - a.y;
  const double len2 = abx * abx + aby * aby;
  if (len2 == 0.0) return distance(p, a);
  double t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2;
  t = std::clamp(t, 0.0, 1.0);
  const PlanarPoint proj{a.x + t * abx, a.y + t * aby};
  return distance(p, proj);
}

double distance_to_boundary(const PlanarPoint& p, const PlanarPolygon& polygon) {
  double best = std::numeric_limits<double>::infinity();
  auto visit = [&](const PlanarRing& ring) {
    const std::size_t n = ring.size();
    if (n == 1) {
      best = std::min(best, distance(p, ring[0]));
      return;
    }
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      best = std::min(best, distance_to_segment(p, ring[j], ring[i]));
    }
  };
  visit(polygon.outer);
  for (const auto& hole : polygon.holes) visit(hole);
  return best;
}

bool segments_intersect(const PlanarPoint& a, const PlanarPoint& b,
                        const PlanarPoint& c, const PlanarPoint& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

bool ring_is_simple(const PlanarRing& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint& a = ring[i];
    const PlanarPoint& b = ring[(i + 1) % n];
    const double min_x = std::min(a.x, b.x), max_x = std::max(a.x, b.x);
    const double min_y = std::min(a.y, b.y), max_y = std::max(a.y, b.y);
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent segments (they share an endpoint by construction)
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      const PlanarPoint& c = ring[j];
      const PlanarPoint& d = ring[(j + 1) % n];
      if (std::max(c.x, d.x) < min_x || std::min(c.x, d.x) > max_x ||
          std::max(c.y, d.y) < min_y || std::min(c.y, d.y) > max_y) {
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

BoundingBox bounding_box(const PlanarRing& ring) {
  BoundingBox box;
  if (ring.empty()) return box;
  box.min_x = box.max_x = ring[0].x;
  box.min_y = box.max_y = ring[0].y;
  for (const auto& p : ring) {
    box.min_x = std::min(box.min_x, p.x);
    box.max_x = std::max(box.max_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

BoundingBox bounding_box(const PlanarPolygon& polygon) {
  return bounding_box(polygon.outer);
}

double polygon_diameter_bound(const PlanarPolygon& polygon) {
  const BoundingBox box = bounding_box(polygon);
  return std::hypot(box.width(), box.height());
}

PlanarRing collapse_duplicates(PlanarRing ring) {
  if (ring.size() < 2) return ring;
  PlanarRing out;
  out.reserve(ring.size());
  for (const auto& p : ring) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

} // namespace cbrs

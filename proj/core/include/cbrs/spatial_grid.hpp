#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "cbrs/planar.hpp"

namespace cbrs {

namespace detail {
inline std::int64_t grid_key(std::int32_t cx, std::int32_t cy) {
  return (static_cast<std::int64_t>(cx) << 32) ^
         static_cast<std::int64_t>(static_cast<std::uint32_t>(cy));
}
} // namespace detail

/// Uniform hash grid over a fixed point set. Queries enumerate candidate
/// indices in a deterministic order (cell row-major, insertion order within a
/// cell), so callers that break ties by index stay reproducible.
class PointGrid {
public:
  PointGrid() = default;

  PointGrid(std::span<const PlanarPoint> points, double cell_size)
      : points_(points.begin(), points.end()),
        cell_(cell_size > 0 ? cell_size : 1.0) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      cells_[key_of(points_[i])].push_back(i);
    }
  }

  std::size_t size() const { return points_.size(); }
  const PlanarPoint& point(std::size_t i) const { return points_[i]; }

  /// Calls fn(index, squared_distance) for every point within radius r of q.
  template <typename Fn>
  void for_each_within(const PlanarPoint& q, double r, Fn&& fn) const {
    if (points_.empty() || r < 0) return;
    const double r2 = r * r;
    const auto [cx0, cy0] = cell_of({q.x - r, q.y - r});
    const auto [cx1, cy1] = cell_of({q.x + r, q.y + r});
    for (std::int32_t cy = cy0; cy <= cy1; ++cy) {
      for (std::int32_t cx = cx0; cx <= cx1; ++cx) {
        auto it = cells_.find(detail::grid_key(cx, cy));
        if (it == cells_.end()) continue;
        for (std::size_t idx : it->second) {
          const double d2 = squared_distance(points_[idx], q);
          if (d2 <= r2) fn(idx, d2);
        }
      }
    }
  }

  /// True if any point other than `exclude` lies strictly closer than r to q.
  bool any_closer_than(const PlanarPoint& q, double r,
                       std::size_t exclude = std::numeric_limits<std::size_t>::max()) const {
    if (points_.empty()) return false;
    const double r2 = r * r;
    const auto [cx0, cy0] = cell_of({q.x - r, q.y - r});
    const auto [cx1, cy1] = cell_of({q.x + r, q.y + r});
    for (std::int32_t cy = cy0; cy <= cy1; ++cy) {
      for (std::int32_t cx = cx0; cx <= cx1; ++cx) {
        auto it = cells_.find(detail::grid_key(cx, cy));
        if (it == cells_.end()) continue;
        for (std::size_t idx : it->second) {
          if (idx == exclude) continue;
          if (squared_distance(points_[idx], q) < r2) return true;
        }
      }
    }
    return false;
  }

private:
  std::pair<std::int32_t, std::int32_t> cell_of(const PlanarPoint& p) const {
    return {static_cast<std::int32_t>(std::floor(p.x / cell_)),
            static_cast<std::int32_t>(std::floor(p.y / cell_))};
  }

  std::int64_t key_of(const PlanarPoint& p) const {
    const auto [cx, cy] = cell_of(p);
    return detail::grid_key(cx, cy);
  }

  std::vector<PlanarPoint> points_;
  double cell_ = 1.0;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
};

/// Segment-level index over all rings of a polygon. Answers containment
/// (even-odd crossing count, boundary-inclusive) and "is any boundary segment
/// closer than r" without scanning every segment.
class RingProximityIndex {
public:
  RingProximityIndex() = default;
  RingProximityIndex(const PlanarPolygon& polygon, double cell_size);

  bool contains(const PlanarPoint& p) const;

  /// Minimum distance from p to the boundary if it is <= limit, otherwise
  /// a value > limit (exact cutoff, conservative search).
  double distance_to_boundary_within(const PlanarPoint& p, double limit) const;

  bool boundary_closer_than(const PlanarPoint& p, double r) const {
    return distance_to_boundary_within(p, r) < r;
  }

  std::size_t segment_count() const { return seg_a_.size(); }

private:
  void add_ring(const PlanarRing& ring);

  std::vector<PlanarPoint> seg_a_;
  std::vector<PlanarPoint> seg_b_;
  double cell_ = 1.0;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
  // segments bucketed by the y-band they cross, for ray casting
  double band_ = 1.0;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> bands_;
};

} // namespace cbrs

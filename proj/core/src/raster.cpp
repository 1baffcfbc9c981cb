#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cbrs/erosion.hpp"
#include "cbrs/spatial_grid.hpp"

namespace cbrs {

namespace {

std::int64_t band_row(double y, double band) {
  return static_cast<std::int64_t>(std::floor(y / band));
}

} // namespace

RingProximityIndex::RingProximityIndex(const PlanarPolygon& polygon,
                                       double cell_size)
    : cell_(cell_size > 0 ? cell_size : 1.0), band_(cell_) {
  add_ring(polygon.outer);
  for (const auto& hole : polygon.holes) add_ring(hole);
}

void RingProximityIndex::add_ring(const PlanarRing& ring) {
  const std::size_t n = ring.size();
  if (n < 2) return;
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint& a = ring[i];
    const PlanarPoint& b = ring[(i + 1) % n];
    const std::size_t index = seg_a_.size();
    seg_a_.push_back(a);
    seg_b_.push_back(b);

    const auto cx0 = static_cast<std::int32_t>(std::floor(std::min(a.x, b.x) / cell_));
    const auto cx1 = static_cast<std::int32_t>(std::floor(std::max(a.x, b.x) / cell_));
    const auto cy0 = static_cast<std::int32_t>(std::floor(std::min(a.y, b.y) / cell_));
    const auto cy1 = static_cast<std::int32_t>(std::floor(std::max(a.y, b.y) / cell_));
    for (std::int32_t cy = cy0; cy <= cy1; ++cy) {
      for (std::int32_t cx = cx0; cx <= cx1; ++cx) {
        cells_[detail::grid_key(cx, cy)].push_back(index);
      }
    }
    const std::int64_t r0 = band_row(std::min(a.y, b.y), band_);
    const std::int64_t r1 = band_row(std::max(a.y, b.y), band_);
    for (std::int64_t r = r0; r <= r1; ++r) {
      bands_[r].push_back(index);
    }
  }
}

bool RingProximityIndex::contains(const PlanarPoint& p) const {
  const auto it = bands_.find(band_row(p.y, band_));
  if (it == bands_.end()) return false;
  bool inside = false;
  for (std::size_t index : it->second) {
    const PlanarPoint& a = seg_a_[index];
    const PlanarPoint& b = seg_b_[index];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross == 0.0 && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
        p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y)) {
      return true;  // on the boundary
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_int = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_int) inside = !inside;
    }
  }
  return inside;
}

double RingProximityIndex::distance_to_boundary_within(const PlanarPoint& p,
                                                       double limit) const {
  double best = std::numeric_limits<double>::infinity();
  if (seg_a_.empty() || limit < 0) return best;
  const auto cx0 = static_cast<std::int32_t>(std::floor((p.x - limit) / cell_));
  const auto cx1 = static_cast<std::int32_t>(std::floor((p.x + limit) / cell_));
  const auto cy0 = static_cast<std::int32_t>(std::floor((p.y - limit) / cell_));
  const auto cy1 = static_cast<std::int32_t>(std::floor((p.y + limit) / cell_));
  for (std::int32_t cy = cy0; cy <= cy1; ++cy) {
    for (std::int32_t cx = cx0; cx <= cx1; ++cx) {
      const auto it = cells_.find(detail::grid_key(cx, cy));
      if (it == cells_.end()) continue;
      for (std::size_t index : it->second) {
        best = std::min(best,
                        distance_to_segment(p, seg_a_[index], seg_b_[index]));
      }
    }
  }
  return best;
}

double capped_raster_resolution(const PlanarPolygon& part, double requested_m,
                                std::size_t cell_cap) {
  if (!(requested_m > 0.0)) {
    throw std::invalid_argument("raster resolution must be positive");
  }
  if (cell_cap == 0) return requested_m;
  const BoundingBox box = bounding_box(part);
  const double w = box.width();
  const double h = box.height();
  if (w <= 0.0 || h <= 0.0) return requested_m;
  const double cells = std::ceil(w / requested_m) * std::ceil(h / requested_m);
  if (cells <= static_cast<double>(cell_cap)) return requested_m;
  return std::sqrt(w * h / static_cast<double>(cell_cap));
}

double raster_allowed_area(const PlanarPolygon& part, double setback_m,
                           double resolution_m) {
  if (!(setback_m > 0.0)) {
    throw std::invalid_argument("set-back must be positive");
  }
  if (!(resolution_m > 0.0)) {
    throw std::invalid_argument("raster resolution must be positive");
  }
  if (part.outer.size() < 3) return 0.0;
  const BoundingBox box = bounding_box(part);
  const double w = box.width();
  const double h = box.height();
  if (w <= 0.0 || h <= 0.0) return 0.0;

  // every boundary segment of every ring feeds both the parity scan and the
  // clearance test
  std::vector<PlanarPoint> seg_a;
  std::vector<PlanarPoint> seg_b;
  auto collect = [&](const PlanarRing& ring) {
    const std::size_t n = ring.size();
    if (n < 2) return;
    for (std::size_t i = 0; i < n; ++i) {
      seg_a.push_back(ring[i]);
      seg_b.push_back(ring[(i + 1) % n]);
    }
  };
  collect(part.outer);
  for (const auto& hole : part.holes) collect(hole);

  const RingProximityIndex prox(part, setback_m);

  const auto nx = static_cast<std::size_t>(std::ceil(w / resolution_m));
  const auto ny = static_cast<std::size_t>(std::ceil(h / resolution_m));
  std::size_t allowed = 0;
  std::vector<double> crossings;
  for (std::size_t row = 0; row < ny; ++row) {
    const double y = box.min_y + (static_cast<double>(row) + 0.5) * resolution_m;
    crossings.clear();
    for (std::size_t s = 0; s < seg_a.size(); ++s) {
      const PlanarPoint& a = seg_a[s];
      const PlanarPoint& b = seg_b[s];
      if ((a.y > y) != (b.y > y)) {
        crossings.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
      }
    }
    if (crossings.empty()) continue;
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t col = 0; col < nx; ++col) {
      const double x = box.min_x + (static_cast<double>(col) + 0.5) * resolution_m;
      const auto above = crossings.end() -
                         std::upper_bound(crossings.begin(), crossings.end(), x);
      if (above % 2 == 0) continue;  // outside
      if (prox.boundary_closer_than({x, y}, setback_m)) continue;
      ++allowed;
    }
  }
  return static_cast<double>(allowed) * resolution_m * resolution_m;
}

} // namespace cbrs

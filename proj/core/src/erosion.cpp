#include "cbrs/erosion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbrs {

const char* validity_name(Validity v) {
  switch (v) {
    case Validity::clean: return "clean";
    case Validity::self_intersecting_repaired: return "self_intersecting_repaired";
    case Validity::raster_fallback: return "raster_fallback";
  }
  return "clean";
}

const char* erosion_method_name(ErosionMethod m) {
  switch (m) {
    case ErosionMethod::vertex_qp: return "vertex_qp";
    case ErosionMethod::raster: return "raster";
  }
  return "vertex_qp";
}

namespace {

// relative inflation applied when constructing candidate points on constraint
// circles, so the exact >= setback re-check passes in double arithmetic
constexpr double kRadiusInflation = 1e-9;

bool lex_less(const PlanarPoint& a, const PlanarPoint& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

int circle_circle_intersections(const PlanarPoint& c1, const PlanarPoint& c2,
                                double r, PlanarPoint out[2]) {
  const double dx = c2.x - c1.x;
  const double dy = c2.y - c1.y;
  const double dist2 = dx * dx + dy * dy;
  if (dist2 == 0.0 || dist2 > 4.0 * r * r) return 0;
  const double dist = std::sqrt(dist2);
  const double half = dist / 2.0;
  const double h2 = r * r - half * half;
  const double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
  const double mx = (c1.x + c2.x) / 2.0;
  const double my = (c1.y + c2.y) / 2.0;
  const double ux = dx / dist;
  const double uy = dy / dist;
  out[0] = {mx - h * uy, my + h * ux};
  if (h == 0.0) return 1;
  out[1] = {mx + h * uy, my - h * ux};
  return 2;
}

int circle_segment_intersections(const PlanarPoint& c, double r,
                                 const PlanarPoint& a, const PlanarPoint& b,
                                 PlanarPoint out[2]) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double fx = a.x - c.x;
  const double fy = a.y - c.y;
  const double qa = dx * dx + dy * dy;
  if (qa == 0.0) return 0;
  const double qb = 2.0 * (fx * dx + fy * dy);
  const double qc = fx * fx + fy * fy - r * r;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return 0;
  const double sq = std::sqrt(disc);
  int count = 0;
  for (const double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
    if (t < 0.0 || t > 1.0) continue;
    out[count++] = {a.x + t * dx, a.y + t * dy};
    if (sq == 0.0) break;
  }
  return count;
}

} // namespace

DensifiedPolygon densify(const PlanarPolygon& polygon, double max_spacing_m) {
  if (!(max_spacing_m > 0.0)) {
    throw std::invalid_argument("densification spacing must be positive");
  }
  auto densify_ring = [max_spacing_m](const PlanarRing& ring) {
    DensifiedRing out;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const PlanarPoint& a = ring[i];
      const PlanarPoint& b = ring[(i + 1) % n];
      out.points.push_back(a);
      out.original.push_back(1);
      const double len = distance(a, b);
      if (len > max_spacing_m) {
        const auto pieces =
            static_cast<std::size_t>(std::ceil(len / max_spacing_m));
        for (std::size_t k = 1; k < pieces; ++k) {
          const double t =
              static_cast<double>(k) / static_cast<double>(pieces);
          out.points.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
          out.original.push_back(0);
        }
      }
    }
    return out;
  };
  DensifiedPolygon out;
  out.outer = densify_ring(polygon.outer);
  out.holes.reserve(polygon.holes.size());
  for (const auto& hole : polygon.holes) {
    out.holes.push_back(densify_ring(hole));
  }
  return out;
}

PlanarPolygon DensifiedPolygon::as_polygon() const {
  PlanarPolygon out;
  out.outer = outer.points;
  out.holes.reserve(holes.size());
  for (const auto& hole : holes) out.holes.push_back(hole.points);
  return out;
}

PlanarPolygon densify_polygon(const PlanarPolygon& polygon, double max_spacing_m) {
  return densify(polygon, max_spacing_m).as_polygon();
}

struct ErosionContext::Impl {
  double d = 0.0;
  double s = 0.0;
  double inflated = 0.0;  // d * (1 + kRadiusInflation)
  double diameter = 0.0;
  std::vector<PlanarPoint> points;
  std::vector<std::uint8_t> original;
  std::vector<std::pair<std::size_t, std::size_t>> rings;
  PointGrid grid;
  RingProximityIndex prox;
  std::vector<PlanarPoint> feasible_vertices;
  PointGrid feasible_grid;

  bool feasible(const PlanarPoint& c) const {
    return prox.contains(c) && !grid.any_closer_than(c, d);
  }
};

ErosionContext::ErosionContext(const PlanarPolygon& part, double setback_m,
                               double spacing_m)
    : impl_(std::make_unique<Impl>()) {
  if (!(setback_m > 0.0)) {
    throw std::invalid_argument("set-back must be positive");
  }
  if (!(spacing_m > 0.0)) {
    throw std::invalid_argument("spacing must be positive");
  }
  Impl& im = *impl_;
  im.d = setback_m;
  im.s = spacing_m;
  im.inflated = setback_m * (1.0 + kRadiusInflation);
  im.diameter = polygon_diameter_bound(part);

  const DensifiedPolygon dense = densify(part, spacing_m);
  auto append_ring = [&im](const DensifiedRing& ring) {
    im.rings.emplace_back(im.points.size(), ring.points.size());
    im.points.insert(im.points.end(), ring.points.begin(), ring.points.end());
    im.original.insert(im.original.end(), ring.original.begin(),
                       ring.original.end());
  };
  append_ring(dense.outer);
  for (const auto& hole : dense.holes) append_ring(hole);

  im.grid = PointGrid(im.points, im.d);
  im.prox = RingProximityIndex(dense.as_polygon(), im.d);

  // Every vertex-eroding problem shares one feasible region, so its corner
  // candidates (pairwise circle intersections that clear every constraint)
  // are computed once. An empty set here means the whole region is empty.
  const double pair_radius = 2.0 * im.inflated;
  PlanarPoint cand[2];
  for (std::size_t i = 0; i < im.points.size(); ++i) {
    im.grid.for_each_within(
        im.points[i], pair_radius, [&](std::size_t j, double) {
          if (j <= i) return;
          const int count = circle_circle_intersections(
              im.points[i], im.points[j], im.inflated, cand);
          for (int k = 0; k < count; ++k) {
            if (im.feasible(cand[k])) im.feasible_vertices.push_back(cand[k]);
          }
        });
  }
  im.feasible_grid = PointGrid(im.feasible_vertices, im.d);
}

ErosionContext::~ErosionContext() = default;
ErosionContext::ErosionContext(ErosionContext&&) noexcept = default;
ErosionContext& ErosionContext::operator=(ErosionContext&&) noexcept = default;

std::span<const PlanarPoint> ErosionContext::boundary() const {
  return impl_->points;
}

bool ErosionContext::boundary_point_is_original(std::size_t index) const {
  return impl_->original[index] != 0;
}

std::span<const std::pair<std::size_t, std::size_t>> ErosionContext::rings() const {
  return impl_->rings;
}

bool ErosionContext::feasible_region_empty() const {
  return impl_->feasible_vertices.empty();
}

bool ErosionContext::point_clear(const PlanarPoint& p, double clearance_m) const {
  return impl_->prox.contains(p) && !impl_->grid.any_closer_than(p, clearance_m);
}

double ErosionContext::setback() const { return impl_->d; }
double ErosionContext::spacing() const { return impl_->s; }

std::optional<PlanarPoint> ErosionContext::erode_vertex(std::size_t index) const {
  const Impl& im = *impl_;
  if (im.feasible_vertices.empty()) return std::nullopt;
  const PlanarPoint p = im.points[index];

  // nearest precomputed feasible vertex bounds the search radius
  double best_d2 = std::numeric_limits<double>::infinity();
  PlanarPoint best{};
  for (double r = im.d; r <= im.diameter + 2.0 * im.d; r *= 2.0) {
    im.feasible_grid.for_each_within(p, r, [&](std::size_t j, double d2) {
      const PlanarPoint& q = im.feasible_grid.point(j);
      if (d2 < best_d2 || (d2 == best_d2 && lex_less(q, best))) {
        best_d2 = d2;
        best = q;
      }
    });
    if (best_d2 < std::numeric_limits<double>::infinity()) break;
  }
  if (best_d2 == std::numeric_limits<double>::infinity()) {
    im.feasible_grid.for_each_within(
        p, im.diameter + 2.0 * im.d, [&](std::size_t j, double d2) {
          const PlanarPoint& q = im.feasible_grid.point(j);
          if (d2 < best_d2 || (d2 == best_d2 && lex_less(q, best))) {
            best_d2 = d2;
            best = q;
          }
        });
    if (best_d2 == std::numeric_limits<double>::infinity()) return std::nullopt;
  }

  auto consider = [&](const PlanarPoint& c) {
    const double d2 = squared_distance(c, p);
    if (d2 > best_d2 || (d2 == best_d2 && !lex_less(c, best))) return;
    if (!im.feasible(c)) return;
    best_d2 = d2;
    best = c;
  };

  // any optimum closer than the current bound has its active constraint
  // centers within d + |bound|
  const double reach = im.d + std::sqrt(best_d2) + im.d * 1e-9;
  std::vector<std::size_t> near;
  im.grid.for_each_within(p, reach,
                          [&](std::size_t j, double) { near.push_back(j); });

  PlanarPoint cand[2];
  const double pair_limit2 = 4.0 * im.inflated * im.inflated;
  for (std::size_t a = 0; a < near.size(); ++a) {
    const std::size_t j = near[a];
    if (j != index && !(im.points[j] == p)) {
      // radial projection of p onto the j-th constraint circle
      const double len = distance(im.points[j], p);
      const double scale = im.inflated / len;
      consider({im.points[j].x + (p.x - im.points[j].x) * scale,
                im.points[j].y + (p.y - im.points[j].y) * scale});
    }
    for (std::size_t b = a + 1; b < near.size(); ++b) {
      const std::size_t k = near[b];
      if (squared_distance(im.points[j], im.points[k]) > pair_limit2) continue;
      const int count = circle_circle_intersections(im.points[j], im.points[k],
                                                    im.inflated, cand);
      for (int t = 0; t < count; ++t) consider(cand[t]);
    }
  }
  return best;
}

std::optional<PlanarPoint> erode_vertex(const PlanarPoint& vertex,
                                        std::span<const PlanarPoint> boundary,
                                        double setback_m,
                                        const PlanarPolygon& original) {
  if (!(setback_m > 0.0)) {
    throw std::invalid_argument("set-back must be positive");
  }
  if (boundary.empty()) return std::nullopt;
  const double d = setback_m;
  const double inflated = d * (1.0 + kRadiusInflation);
  const PointGrid grid(boundary, d);
  const RingProximityIndex prox(original, d);

  auto feasible = [&](const PlanarPoint& c) {
    return prox.contains(c) && !grid.any_closer_than(c, d);
  };

  double best_d2 = std::numeric_limits<double>::infinity();
  PlanarPoint best{};
  bool found = false;
  auto consider = [&](const PlanarPoint& c) {
    const double d2 = squared_distance(c, vertex);
    if (found && (d2 > best_d2 || (d2 == best_d2 && !lex_less(c, best)))) return;
    if (!feasible(c)) return;
    best_d2 = d2;
    best = c;
    found = true;
  };

  // the boundary here is caller-supplied and may be sparse, so candidates
  // where the containment constraint is active are enumerated too
  consider(vertex);
  for (const auto& v : original.outer) consider(v);
  for (const auto& hole : original.holes) {
    for (const auto& v : hole) consider(v);
  }

  std::vector<std::pair<PlanarPoint, PlanarPoint>> edges;
  auto collect_edges = [&edges](const PlanarRing& ring) {
    const std::size_t n = ring.size();
    if (n < 2) return;
    for (std::size_t i = 0; i < n; ++i) {
      edges.emplace_back(ring[i], ring[(i + 1) % n]);
    }
  };
  collect_edges(original.outer);
  for (const auto& hole : original.holes) collect_edges(hole);

  for (const auto& [a, b] : edges) {
    const double abx = b.x - a.x;
    const double aby = b.y - a.y;
    const double len2 = abx * abx + aby * aby;
    if (len2 == 0.0) continue;
    double t = ((vertex.x - a.x) * abx + (vertex.y - a.y) * aby) / len2;
    t = std::clamp(t, 0.0, 1.0);
    consider({a.x + t * abx, a.y + t * aby});
  }

  PlanarPoint cand[2];
  for (std::size_t j = 0; j < boundary.size(); ++j) {
    const PlanarPoint& c = boundary[j];
    if (!(c == vertex)) {
      const double len = distance(c, vertex);
      const double scale = inflated / len;
      consider({c.x + (vertex.x - c.x) * scale, c.y + (vertex.y - c.y) * scale});
    } else {
      // direction-free center: probe the two inward bisector directions of
      // the cyclic neighbors when the vertex sits in the boundary list
      const std::size_t n = boundary.size();
      const PlanarPoint& prev = boundary[(j + n - 1) % n];
      const PlanarPoint& next = boundary[(j + 1) % n];
      double ux = prev.x - vertex.x, uy = prev.y - vertex.y;
      double vx = next.x - vertex.x, vy = next.y - vertex.y;
      const double ul = std::hypot(ux, uy), vl = std::hypot(vx, vy);
      if (ul > 0.0) { ux /= ul; uy /= ul; }
      if (vl > 0.0) { vx /= vl; vy /= vl; }
      double bx = ux + vx, by = uy + vy;
      const double bl = std::hypot(bx, by);
      if (bl > 1e-12) {
        bx /= bl;
        by /= bl;
      } else {  // straight through: use the edge normal
        bx = -uy;
        by = ux;
      }
      consider({vertex.x + bx * inflated, vertex.y + by * inflated});
      consider({vertex.x - bx * inflated, vertex.y - by * inflated});
    }
    for (std::size_t k = j + 1; k < boundary.size(); ++k) {
      const int count =
          circle_circle_intersections(c, boundary[k], inflated, cand);
      for (int t = 0; t < count; ++t) consider(cand[t]);
    }
    for (const auto& [a, b] : edges) {
      const int count = circle_segment_intersections(c, inflated, a, b, cand);
      for (int t = 0; t < count; ++t) consider(cand[t]);
    }
  }
  if (!found) return std::nullopt;
  return best;
}

namespace {

bool rings_cross(const PlanarRing& r1, const PlanarRing& r2) {
  const std::size_t n1 = r1.size();
  const std::size_t n2 = r2.size();
  for (std::size_t i = 0; i < n1; ++i) {
    const PlanarPoint& a = r1[i];
    const PlanarPoint& b = r1[(i + 1) % n1];
    for (std::size_t j = 0; j < n2; ++j) {
      if (segments_intersect(a, b, r2[j], r2[(j + 1) % n2])) return true;
    }
  }
  return false;
}

// interior points of every chord must stay inside the part and keep most of
// the set-back clearance; a chord that cuts across a pocket or a neck fails
bool ring_edges_supported(const PlanarRing& ring, const ErosionContext& ctx) {
  const double threshold = 0.9 * ctx.setback();
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint& a = ring[i];
    const PlanarPoint& b = ring[(i + 1) % n];
    for (int k = 1; k <= 7; ++k) {
      const double t = static_cast<double>(k) / 8.0;
      const PlanarPoint sample{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      if (!ctx.point_clear(sample, threshold)) return false;
    }
  }
  return true;
}

ErosionResult raster_result(const PlanarPolygon& part, double setback_m,
                            const ErodeOptions& options, double area_ct,
                            std::string note) {
  ErosionResult result;
  result.setback_m = setback_m;
  result.area_ct_m2 = area_ct;
  const double requested =
      options.raster_resolution_m > 0.0 ? options.raster_resolution_m
                                        : setback_m / 20.0;
  const double res =
      capped_raster_resolution(part, requested, options.raster_cell_cap);
  result.area_cbrs_m2 = raster_allowed_area(part, setback_m, res);
  result.method = ErosionMethod::raster;
  result.validity = Validity::raster_fallback;
  result.is_empty = result.area_cbrs_m2 == 0.0;
  if (res != requested) {
    note += " (grid coarsened to " + std::to_string(res) + " m to fit the cell budget)";
  }
  result.notes.push_back(std::move(note));
  return result;
}

} // namespace

ErosionResult erode_polygon(const PlanarPolygon& part, double setback_m,
                            const ErodeOptions& options) {
  if (!(setback_m > 0.0)) {
    throw std::invalid_argument("set-back must be positive");
  }
  ErosionResult result;
  result.setback_m = setback_m;
  result.area_ct_m2 = polygon_area(part);
  if (part.outer.size() < 3 || result.area_ct_m2 <= 0.0) {
    result.area_ct_m2 = std::max(result.area_ct_m2, 0.0);
    result.notes.push_back("degenerate part, nothing to erode");
    return result;
  }
  const double spacing =
      options.spacing_m > 0.0 ? options.spacing_m : setback_m / 2.0;
  const ErosionContext ctx(part, setback_m, spacing);

  if (ctx.feasible_region_empty()) {
    // cheap grid cross-check: the candidate pre-pass being empty must agree
    // with an independent scan before the part is declared all set-back
    const double coarse = capped_raster_resolution(part, setback_m / 10.0,
                                                   options.raster_cell_cap);
    if (raster_allowed_area(part, setback_m, coarse) > 0.0) {
      return raster_result(part, setback_m, options, result.area_ct_m2,
                           "corner candidates empty but the grid oracle found "
                           "allowed cells; area taken from the grid");
    }
    result.area_cbrs_m2 = 0.0;
    result.is_empty = true;
    return result;
  }

  const auto ring_spans = ctx.rings();
  std::vector<PlanarRing> assembled;
  assembled.reserve(ring_spans.size());
  for (const auto& [first, count] : ring_spans) {
    PlanarRing mapped;
    for (std::size_t idx = first; idx < first + count; ++idx) {
      if (!options.densified_vertices && !ctx.boundary_point_is_original(idx)) {
        continue;
      }
      const auto moved = ctx.erode_vertex(idx);
      if (moved.has_value()) mapped.push_back(*moved);
    }
    assembled.push_back(collapse_duplicates(std::move(mapped)));
  }

  const PlanarRing& outer = assembled[0];
  bool ok = outer.size() >= 3 && ring_is_simple(outer) &&
            ring_edges_supported(outer, ctx);
  if (ok) {
    const double in_sign = signed_ring_area(part.outer);
    const double out_sign = signed_ring_area(outer);
    ok = (in_sign > 0.0) == (out_sign > 0.0) && out_sign != 0.0;
  }
  double hole_area_sum = 0.0;
  if (ok) {
    for (std::size_t h = 1; h < assembled.size(); ++h) {
      const PlanarRing& hole = assembled[h];
      if (hole.size() < 3 || !ring_is_simple(hole) ||
          !ring_edges_supported(hole, ctx)) {
        ok = false;
        break;
      }
      // an eroded hole ring encloses the input hole, so it cannot lose area
      if (std::abs(signed_ring_area(hole)) <
          std::abs(signed_ring_area(part.holes[h - 1]))) {
        ok = false;
        break;
      }
      if (!point_in_ring(hole[0], outer)) {
        ok = false;
        break;
      }
      if (rings_cross(outer, hole)) {
        ok = false;
        break;
      }
      for (std::size_t h2 = 1; h2 < h; ++h2) {
        if (rings_cross(assembled[h2], hole)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      hole_area_sum += std::abs(signed_ring_area(hole));
    }
  }
  if (ok) {
    const double area = std::abs(signed_ring_area(outer)) - hole_area_sum;
    if (area > 0.0) {
      result.area_cbrs_m2 = area;
      result.is_empty = false;
      PlanarPolygon allowed;
      allowed.outer = outer;
      allowed.holes.assign(assembled.begin() + 1, assembled.end());
      result.allowed.push_back(std::move(allowed));
      return result;
    }
  }
  return raster_result(part, setback_m, options, result.area_ct_m2,
                       "eroded boundary failed validation; area taken from "
                       "the grid oracle");
}

ErosionResult erode_tract(std::span<const PlanarPolygon> parts,
                          double setback_m, const ErodeOptions& options,
                          bool input_self_intersecting) {
  ErosionResult total;
  total.setback_m = setback_m;
  for (const auto& part : parts) {
    ErosionResult r = erode_polygon(part, setback_m, options);
    total.area_ct_m2 += r.area_ct_m2;
    total.area_cbrs_m2 += r.area_cbrs_m2;
    for (auto& poly : r.allowed) total.allowed.push_back(std::move(poly));
    for (auto& note : r.notes) total.notes.push_back(std::move(note));
    if (r.method == ErosionMethod::raster) total.method = ErosionMethod::raster;
    if (r.validity == Validity::raster_fallback) {
      total.validity = Validity::raster_fallback;
    }
  }
  if (input_self_intersecting && total.validity == Validity::clean) {
    total.validity = Validity::self_intersecting_repaired;
  }
  total.is_empty = total.area_cbrs_m2 == 0.0;
  return total;
}

} // namespace cbrs

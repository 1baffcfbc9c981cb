#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbrs/planar.hpp"
#include "cbrs/spatial_grid.hpp"

namespace cbrs {

enum class ErosionMethod { vertex_qp, raster };
enum class Validity { clean, self_intersecting_repaired, raster_fallback };

const char* validity_name(Validity v);
const char* erosion_method_name(ErosionMethod m);

/// CBRS-allowed region of one tract (or tract part) with its areas.
struct ErosionResult {
  std::vector<PlanarPolygon> allowed;  // possibly empty
  double area_ct_m2 = 0.0;
  double area_cbrs_m2 = 0.0;
  double setback_m = 0.0;
  ErosionMethod method = ErosionMethod::vertex_qp;
  bool is_empty = true;  // <=> area_cbrs_m2 == 0
  Validity validity = Validity::clean;
  std::vector<std::string> notes;
};

struct ErodeOptions {
  /// Densification spacing; 0 means setback/2.
  double spacing_m = 0.0;
  /// Raster oracle resolution for fallbacks; 0 means setback/20 (capped).
  double raster_resolution_m = 0.0;
  /// Cell budget for one raster run; resolution is coarsened to fit.
  std::size_t raster_cell_cap = 4'000'000;
  /// Solve the per-vertex problem for every densified boundary point, not
  /// just original vertices (sensitivity-check mode).
  bool densified_vertices = false;
};

/// Ring with densification bookkeeping: points inserted on segments are
/// marked non-original.
struct DensifiedRing {
  std::vector<PlanarPoint> points;
  std::vector<std::uint8_t> original;  // 1 for input vertices
};

struct DensifiedPolygon {
  DensifiedRing outer;
  std::vector<DensifiedRing> holes;

  PlanarPolygon as_polygon() const;
};

/// Splits every boundary segment longer than max_spacing_m into equal parts.
/// Inserted points lie exactly on the original segments; original vertices
/// are preserved in order.
DensifiedPolygon densify(const PlanarPolygon& polygon, double max_spacing_m);
PlanarPolygon densify_polygon(const PlanarPolygon& polygon, double max_spacing_m);

/// Shared per-part state for the vertex set-back problem: the densified
/// boundary point set (outer + holes) with ring adjacency, spatial indexes
/// and the feasible-region vertex candidates.
class ErosionContext {
public:
  ErosionContext(const PlanarPolygon& part, double setback_m, double spacing_m);
  ~ErosionContext();
  ErosionContext(ErosionContext&&) noexcept;
  ErosionContext& operator=(ErosionContext&&) noexcept;

  /// Nearest point to boundary point `index` that keeps distance >= setback
  /// from every boundary point and lies inside the original polygon.
  /// std::nullopt when the feasible region is empty.
  std::optional<PlanarPoint> erode_vertex(std::size_t index) const;

  std::span<const PlanarPoint> boundary() const;
  bool boundary_point_is_original(std::size_t index) const;
  /// Ring-local structure: rings()[r] gives [first, count) into boundary().
  std::span<const std::pair<std::size_t, std::size_t>> rings() const;
  bool feasible_region_empty() const;
  /// True when p lies inside the part and no boundary point is closer than
  /// clearance_m. Validates the chords of the assembled polygon.
  bool point_clear(const PlanarPoint& p, double clearance_m) const;
  double setback() const;
  double spacing() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Spec-shaped single-ring entry point: `boundary` is one cyclic ring that
/// must contain `vertex`. For multi-ring parts use ErosionContext.
std::optional<PlanarPoint> erode_vertex(const PlanarPoint& vertex,
                                        std::span<const PlanarPoint> boundary,
                                        double setback_m,
                                        const PlanarPolygon& original);

/// Erodes one tract part: densify, solve the per-vertex problems, assemble
/// surviving points in original cyclic order, validate, and fall back to the
/// raster oracle for the area when validation fails.
ErosionResult erode_polygon(const PlanarPolygon& part, double setback_m,
                            const ErodeOptions& options = {});

/// Erodes each part independently and sums areas.
ErosionResult erode_tract(std::span<const PlanarPolygon> parts, double setback_m,
                          const ErodeOptions& options = {},
                          bool input_self_intersecting = false);

/// Independent brute-force oracle: counts grid cells of pitch resolution_m
/// whose center is inside the part and >= setback_m from every boundary
/// segment. Deterministic for fixed inputs.
double raster_allowed_area(const PlanarPolygon& part, double setback_m,
                           double resolution_m);

/// Resolution actually used for a part after applying the cell cap.
double capped_raster_resolution(const PlanarPolygon& part, double requested_m,
                                std::size_t cell_cap);

} // namespace cbrs

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbrs/geodetic.hpp"

namespace cbrs {

struct KmlParseOptions {
  /// ExtendedData field names probed for the tract identifier, in order.
  /// Values like "1400000US11001000100" are normalized by taking the part
  /// after the last "US".
  std::vector<std::string> id_fields = {"GEOID", "GEOID10", "GEOID20", "GEO_ID"};
  /// Field names probed for a display name; falls back to the placemark name.
  std::vector<std::string> name_fields = {"NAME", "NAMELSAD"};
  /// Skip placemarks with record-level problems instead of failing the parse.
  bool lenient = false;
};

struct IngestReport {
  std::vector<TractGeometry> tracts;
  std::vector<std::string> warnings;
  std::size_t skipped = 0;  // placemarks dropped in lenient mode
};

/// Parses census cartographic boundary KML into tract records (population
/// unset). Rings are normalized: the duplicate closing point is removed and
/// consecutive duplicate points are collapsed; altitude is discarded.
///
/// Malformed XML raises ParseError with line context. Record-level problems
/// (missing identifier, ring with < 3 distinct points, zero-area ring,
/// out-of-range coordinates, duplicate geoid) raise ParseError too, unless
/// options.lenient is set, in which case the placemark is skipped and a
/// warning recorded. Self-intersecting rings are always a warning, never an
/// error.
IngestReport parse_tract_boundaries(std::string_view kml_text,
                                    const KmlParseOptions& options = {});

/// Serializes tracts back to a minimal KML document (one placemark per tract,
/// ExtendedData GEOID field). Coordinates are written with shortest
/// round-trip formatting, so parse -> write -> parse is lossless.
std::string write_tracts_kml(std::span<const TractGeometry> tracts);

} // namespace cbrs

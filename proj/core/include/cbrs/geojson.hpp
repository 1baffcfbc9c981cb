#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbrs/geodetic.hpp"

namespace cbrs {

using ordered_json = nlohmann::ordered_json;

/// RFC 7946 FeatureCollection: one feature per tract, MultiPolygon geometry,
/// WGS84 lon-lat order, closed rings, outer rings counter-clockwise.
ordered_json tracts_to_geojson(std::span<const TractGeometry> tracts);

/// Reads a FeatureCollection produced by tracts_to_geojson (or any
/// Polygon/MultiPolygon features carrying a "geoid" property).
std::vector<TractGeometry> tracts_from_geojson(std::string_view text);

/// MultiPolygon geometry node from geodetic rings (unclosed in, closed out).
ordered_json multipolygon_geometry(
    const std::vector<std::pair<GeodeticRing, std::vector<GeodeticRing>>>& parts);

} // namespace cbrs

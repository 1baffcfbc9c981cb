#include "cbrs/geojson.hpp"

#include <algorithm>

#include "cbrs/error.hpp"

namespace cbrs {

namespace {

ordered_json ring_to_coords(GeodeticRing ring, bool want_ccw) {
  const double area = ring_signed_area_deg2(ring);
  if ((area > 0.0) != want_ccw && area != 0.0) {
    std::reverse(ring.begin(), ring.end());
  }
  ordered_json coords = ordered_json::array();
  for (const auto& p : ring) {
    coords.push_back(ordered_json::array({p.lon_deg, p.lat_deg}));
  }
  if (!ring.empty()) {
    coords.push_back(ordered_json::array({ring.front().lon_deg, ring.front().lat_deg}));
  }
  return coords;
}

GeodeticRing coords_to_ring(const ordered_json& coords) {
  GeodeticRing ring;
  if (!coords.is_array()) throw ParseError("ring coordinates are not an array");
  for (const auto& pos : coords) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() ||
        !pos[1].is_number()) {
      throw ParseError("coordinate position is not [lon, lat]");
    }
    ring.push_back({pos[1].get<double>(), pos[0].get<double>()});
  }
  return normalize_ring(std::move(ring));
}

std::vector<TractPart> polygon_parts(const ordered_json& geometry) {
  std::vector<TractPart> parts;
  const std::string type = geometry.value("type", "");
  const auto coords_it = geometry.find("coordinates");
  if (coords_it == geometry.end() || !coords_it->is_array()) {
    throw ParseError("geometry has no coordinates array");
  }
  auto read_polygon = [](const ordered_json& rings) {
    TractPart part;
    bool first = true;
    for (const auto& ring : rings) {
      if (first) {
        part.outer = coords_to_ring(ring);
        first = false;
      } else {
        part.holes.push_back(coords_to_ring(ring));
      }
    }
    return part;
  };
  if (type == "Polygon") {
    parts.push_back(read_polygon(*coords_it));
  } else if (type == "MultiPolygon") {
    for (const auto& poly : *coords_it) {
      parts.push_back(read_polygon(poly));
    }
  } else {
    throw ParseError("unsupported geometry type '" + type + "'");
  }
  return parts;
}

} // namespace

ordered_json multipolygon_geometry(
    const std::vector<std::pair<GeodeticRing, std::vector<GeodeticRing>>>& parts) {
  ordered_json geometry;
  geometry["type"] = "MultiPolygon";
  ordered_json coords = ordered_json::array();
  for (const auto& [outer, holes] : parts) {
    ordered_json poly = ordered_json::array();
    poly.push_back(ring_to_coords(outer, true));
    for (const auto& hole : holes) {
      poly.push_back(ring_to_coords(hole, false));
    }
    coords.push_back(std::move(poly));
  }
  geometry["coordinates"] = std::move(coords);
  return geometry;
}

ordered_json tracts_to_geojson(std::span<const TractGeometry> tracts) {
  ordered_json root;
  root["type"] = "FeatureCollection";
  ordered_json features = ordered_json::array();
  for (const auto& tract : tracts) {
    ordered_json feature;
    feature["type"] = "Feature";
    ordered_json props;
    props["geoid"] = tract.geoid;
    if (!tract.name.empty()) props["name"] = tract.name;
    if (tract.population.has_value()) props["population"] = *tract.population;
    feature["properties"] = std::move(props);
    std::vector<std::pair<GeodeticRing, std::vector<GeodeticRing>>> parts;
    parts.reserve(tract.parts.size());
    for (const auto& part : tract.parts) {
      parts.emplace_back(part.outer, part.holes);
    }
    feature["geometry"] = multipolygon_geometry(parts);
    features.push_back(std::move(feature));
  }
  root["features"] = std::move(features);
  return root;
}

std::vector<TractGeometry> tracts_from_geojson(std::string_view text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  if (root.value("type", "") != "FeatureCollection") {
    throw ParseError("not a FeatureCollection");
  }
  std::vector<TractGeometry> tracts;
  const auto features_it = root.find("features");
  if (features_it == root.end() || !features_it->is_array()) {
    throw ParseError("FeatureCollection has no features array");
  }
  for (const auto& feature : *features_it) {
    TractGeometry tract;
    const auto props_it = feature.find("properties");
    if (props_it != feature.end() && props_it->is_object()) {
      for (const char* key : {"geoid", "GEOID", "GEOID20", "GEOID10"}) {
        const auto it = props_it->find(key);
        if (it != props_it->end() && it->is_string()) {
          tract.geoid = it->get<std::string>();
          break;
        }
      }
      const auto name_it = props_it->find("name");
      if (name_it != props_it->end() && name_it->is_string()) {
        tract.name = name_it->get<std::string>();
      }
      const auto pop_it = props_it->find("population");
      if (pop_it != props_it->end() && pop_it->is_number()) {
        tract.population = pop_it->get<std::int64_t>();
      }
    }
    if (tract.geoid.empty()) {
      throw ParseError("feature has no geoid property");
    }
    const auto geom_it = feature.find("geometry");
    if (geom_it == feature.end() || !geom_it->is_object()) {
      throw ParseError("feature " + tract.geoid + " has no geometry");
    }
    tract.parts = polygon_parts(*geom_it);
    tracts.push_back(std::move(tract));
  }
  return tracts;
}

} // namespace cbrs

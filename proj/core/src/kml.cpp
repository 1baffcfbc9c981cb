#include "cbrs/kml.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "cbrs/csv.hpp"
#include "cbrs/error.hpp"
#include "cbrs/xml.hpp"

namespace cbrs {

namespace {

// trouble with one placemark, recoverable in lenient mode
struct RecordError {
  std::string message;
  int line;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_coordinate(std::string_view token, int line) {
  token = trim(token);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() ||
      !std::isfinite(value)) {
    throw RecordError{"bad coordinate value '" + std::string(token) + "'", line};
  }
  return value;
}

GeodeticRing parse_coordinates(std::string_view text, int line) {
  GeodeticRing ring;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i >= text.size()) break;
    std::size_t end = i;
    while (end < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    std::string_view tuple = text.substr(i, end - i);
    i = end;

    const std::size_t c1 = tuple.find(',');
    if (c1 == std::string_view::npos) {
      throw RecordError{"coordinate tuple '" + std::string(tuple) +
                            "' has no comma",
                        line};
    }
    const std::size_t c2 = tuple.find(',', c1 + 1);
    const std::string_view lon_s = tuple.substr(0, c1);
    const std::string_view lat_s =
        c2 == std::string_view::npos ? tuple.substr(c1 + 1)
                                     : tuple.substr(c1 + 1, c2 - c1 - 1);
    if (c2 != std::string_view::npos &&
        tuple.find(',', c2 + 1) != std::string_view::npos) {
      throw RecordError{"coordinate tuple has more than three components", line};
    }
    GeodeticPoint p;
    p.lon_deg = parse_coordinate(lon_s, line);
    p.lat_deg = parse_coordinate(lat_s, line);
    if (c2 != std::string_view::npos) {
      parse_coordinate(tuple.substr(c2 + 1), line);  // altitude, discarded
    }
    ring.push_back(p);
  }
  return ring;
}

struct PlacemarkState {
  int start_line = 1;
  std::string placemark_name;
  std::vector<xml::Attribute> fields;  // ExtendedData name/value pairs
  std::vector<TractPart> parts;
  bool in_polygon = false;
  bool ring_is_hole = false;
  bool has_pending_outer = false;
};

std::string normalize_geoid(std::string value) {
  const std::size_t us = value.rfind("US");
  if (us != std::string::npos && us + 2 < value.size()) {
    value = value.substr(us + 2);
  }
  return value;
}

const std::string* find_field(const PlacemarkState& pm,
                              const std::vector<std::string>& names) {
  for (const auto& wanted : names) {
    for (const auto& field : pm.fields) {
      if (field.name == wanted && !field.value.empty()) return &field.value;
    }
  }
  return nullptr;
}

void validate_ring(const GeodeticRing& ring, const char* what, int line,
                   bool& self_intersecting, std::vector<std::string>& warnings,
                   const std::string& geoid) {
  if (ring.size() < 3) {
    throw RecordError{std::string(what) + " has fewer than 3 distinct points",
                      line};
  }
  for (const auto& p : ring) {
    if (!geodetic_in_range(p)) {
      throw RecordError{std::string(what) + " coordinate out of range", line};
    }
  }
  if (ring_signed_area_deg2(ring) == 0.0) {
    throw RecordError{std::string(what) + " has zero area", line};
  }
  if (ring_self_intersects(ring)) {
    self_intersecting = true;
    warnings.push_back("tract " + (geoid.empty() ? std::string("<no id>") : geoid) +
                       ": self-intersecting " + what + " near line " +
                       std::to_string(line));
  }
}

} // namespace

IngestReport parse_tract_boundaries(std::string_view kml_text,
                                    const KmlParseOptions& options) {
  IngestReport report;
  std::unordered_set<std::string> seen_geoids;
  xml::PullParser parser(kml_text);

  std::vector<std::string> stack;
  PlacemarkState pm;
  bool in_placemark = false;
  bool skipping = false;  // lenient mode: discard until </Placemark>
  std::string text_buffer;
  bool capture_text = false;
  std::string simple_data_name;

  auto parent_is = [&](std::string_view name, std::size_t up = 1) {
    return stack.size() >= up && stack[stack.size() - up] == name;
  };

  auto finish_placemark = [&]() {
    // geometry and id checks happen once the whole placemark is read
    const std::string* id = find_field(pm, options.id_fields);
    if (id == nullptr) {
      throw RecordError{"placemark has no tract identifier field", pm.start_line};
    }
    TractGeometry tract;
    tract.geoid = normalize_geoid(*id);
    if (tract.geoid.empty()) {
      throw RecordError{"placemark has an empty tract identifier", pm.start_line};
    }
    if (const std::string* nm = find_field(pm, options.name_fields)) {
      tract.name = *nm;
    } else {
      tract.name = pm.placemark_name;
    }
    if (pm.parts.empty()) {
      throw RecordError{"placemark has no polygon geometry", pm.start_line};
    }
    std::vector<std::string> ring_warnings;
    for (auto& part : pm.parts) {
      part.outer = normalize_ring(std::move(part.outer));
      if (part.outer.empty()) {
        throw RecordError{"polygon has no outer boundary", pm.start_line};
      }
      validate_ring(part.outer, "outer ring", pm.start_line,
                    tract.self_intersecting, ring_warnings, tract.geoid);
      for (auto& hole : part.holes) {
        hole = normalize_ring(std::move(hole));
        validate_ring(hole, "inner ring", pm.start_line,
                      tract.self_intersecting, ring_warnings, tract.geoid);
      }
    }
    if (!seen_geoids.insert(tract.geoid).second) {
      throw RecordError{"duplicate tract identifier '" + tract.geoid + "'",
                        pm.start_line};
    }
    tract.parts = std::move(pm.parts);
    for (auto& w : ring_warnings) report.warnings.push_back(std::move(w));
    report.tracts.push_back(std::move(tract));
  };

  for (;;) {
    xml::Event ev = parser.next();
    if (ev.type == xml::EventType::eof) break;

    if (skipping) {
      if (ev.type == xml::EventType::start_element) stack.push_back(ev.name);
      if (ev.type == xml::EventType::end_element) {
        if (ev.name == "Placemark" && stack.back() == "Placemark") {
          stack.pop_back();
          skipping = false;
          in_placemark = false;
        } else {
          stack.pop_back();
        }
      }
      continue;
    }

    switch (ev.type) {
      case xml::EventType::start_element: {
        if (ev.name == "Placemark") {
          if (in_placemark) {
            throw ParseError("nested Placemark", parser.line());
          }
          in_placemark = true;
          pm = PlacemarkState{};
          pm.start_line = parser.line();
        } else if (in_placemark) {
          if (ev.name == "Polygon") {
            pm.parts.emplace_back();
            pm.in_polygon = true;
            pm.has_pending_outer = false;
          } else if (ev.name == "outerBoundaryIs") {
            pm.ring_is_hole = false;
          } else if (ev.name == "innerBoundaryIs") {
            pm.ring_is_hole = true;
          } else if (ev.name == "coordinates") {
            capture_text = true;
            text_buffer.clear();
          } else if (ev.name == "name" && parent_is("Placemark")) {
            capture_text = true;
            text_buffer.clear();
          } else if (ev.name == "SimpleData") {
            simple_data_name.clear();
            for (const auto& attr : ev.attributes) {
              if (attr.name == "name") simple_data_name = attr.value;
            }
            capture_text = true;
            text_buffer.clear();
          } else if (ev.name == "Data") {
            simple_data_name.clear();
            for (const auto& attr : ev.attributes) {
              if (attr.name == "name") simple_data_name = attr.value;
            }
          } else if (ev.name == "value" && parent_is("Data")) {
            capture_text = true;
            text_buffer.clear();
          }
        }
        stack.push_back(ev.name);
        break;
      }
      case xml::EventType::text:
        if (capture_text) text_buffer += ev.text;
        break;
      case xml::EventType::end_element: {
        stack.pop_back();
        if (!in_placemark) break;
        try {
          if (ev.name == "coordinates") {
            capture_text = false;
            if (!pm.in_polygon || pm.parts.empty()) {
              throw RecordError{"coordinates outside a Polygon", parser.line()};
            }
            GeodeticRing ring = parse_coordinates(text_buffer, parser.line());
            TractPart& part = pm.parts.back();
            if (pm.ring_is_hole) {
              part.holes.push_back(std::move(ring));
            } else {
              if (pm.has_pending_outer) {
                throw RecordError{"polygon has two outer boundaries",
                                  parser.line()};
              }
              part.outer = std::move(ring);
              pm.has_pending_outer = true;
            }
          } else if (ev.name == "name" && capture_text) {
            capture_text = false;
            pm.placemark_name = std::string(trim(text_buffer));
          } else if (ev.name == "SimpleData") {
            capture_text = false;
            pm.fields.push_back(
                {simple_data_name, std::string(trim(text_buffer))});
          } else if (ev.name == "value" && capture_text) {
            capture_text = false;
            pm.fields.push_back(
                {simple_data_name, std::string(trim(text_buffer))});
          } else if (ev.name == "Polygon") {
            pm.in_polygon = false;
            pm.ring_is_hole = false;
          } else if (ev.name == "Placemark") {
            in_placemark = false;
            finish_placemark();
          }
        } catch (const RecordError& err) {
          capture_text = false;
          if (!options.lenient) throw ParseError(err.message, err.line);
          report.warnings.push_back("line " + std::to_string(err.line) + ": " +
                                    err.message + " (placemark skipped)");
          ++report.skipped;
          if (ev.name == "Placemark") {
            in_placemark = false;
          } else {
            skipping = true;
          }
        }
        break;
      }
      case xml::EventType::eof:
        break;
    }
  }
  return report;
}

std::string write_tracts_kml(std::span<const TractGeometry> tracts) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<kml xmlns=\"http://www.opengis.net/kml/2.2\">\n<Document>\n";
  for (const auto& tract : tracts) {
    out += "<Placemark>\n";
    if (!tract.name.empty()) {
      out += "  <name>" + xml::escape(tract.name) + "</name>\n";
    }
    out += "  <ExtendedData><SchemaData>\n";
    out += "    <SimpleData name=\"GEOID\">" + xml::escape(tract.geoid) +
           "</SimpleData>\n";
    if (!tract.name.empty()) {
      out += "    <SimpleData name=\"NAME\">" + xml::escape(tract.name) +
             "</SimpleData>\n";
    }
    out += "  </SchemaData></ExtendedData>\n";
    const bool multi = tract.parts.size() > 1;
    if (multi) out += "  <MultiGeometry>\n";
    for (const auto& part : tract.parts) {
      auto write_ring = [&out](const GeodeticRing& ring) {
        out += "<coordinates>";
        for (const auto& p : ring) {
          out += format_double(p.lon_deg);
          out += ',';
          out += format_double(p.lat_deg);
          out += ' ';
        }
        if (!ring.empty()) {
          out += format_double(ring.front().lon_deg);
          out += ',';
          out += format_double(ring.front().lat_deg);
        }
        out += "</coordinates>";
      };
      out += "  <Polygon>\n    <outerBoundaryIs><LinearRing>";
      write_ring(part.outer);
      out += "</LinearRing></outerBoundaryIs>\n";
      for (const auto& hole : part.holes) {
        out += "    <innerBoundaryIs><LinearRing>";
        write_ring(hole);
        out += "</LinearRing></innerBoundaryIs>\n";
      }
      out += "  </Polygon>\n";
    }
    if (multi) out += "  </MultiGeometry>\n";
    out += "</Placemark>\n";
  }
  out += "</Document>\n</kml>\n";
  return out;
}

} // namespace cbrs

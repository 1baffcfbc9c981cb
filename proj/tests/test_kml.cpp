#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "cbrs/error.hpp"
#include "cbrs/kml.hpp"

using namespace cbrs;

namespace {

std::string wrap(const std::string& placemarks) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<kml xmlns=\"http://www.opengis.net/kml/2.2\"><Document>\n" +
         placemarks + "</Document></kml>\n";
}

std::string good_placemark(const std::string& geoid,
                           const std::string& name = "Tract") {
  return "<Placemark><name>" + name + "</name>"
         "<ExtendedData><SchemaData>"
         "<SimpleData name=\"GEOID\">" + geoid + "</SimpleData>"
         "<SimpleData name=\"NAMELSAD\">" + name + "</SimpleData>"
         "</SchemaData></ExtendedData>"
         "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
         "-77.01,38.90,0 -77.00,38.90,0 -77.00,38.91,0 -77.01,38.91,0 "
         "-77.01,38.90,0"
         "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>\n";
}

} // namespace

TEST_CASE("single tract with closed ring") {
  const auto report =
      parse_tract_boundaries(wrap(good_placemark("11001000100", "Census Tract 1")));
  REQUIRE(report.tracts.size() == 1);
  const auto& t = report.tracts[0];
  CHECK(t.geoid == "11001000100");
  CHECK(t.name == "Census Tract 1");
  REQUIRE(t.parts.size() == 1);
  CHECK(t.parts[0].outer.size() == 4);  // closing point removed
  CHECK(t.parts[0].holes.empty());
  CHECK(!t.population.has_value());
  CHECK(!t.self_intersecting);
  CHECK(report.warnings.empty());
  CHECK(report.skipped == 0);
}

TEST_CASE("GEO_ID values with a US prefix are normalized") {
  const std::string pm =
      "<Placemark>"
      "<ExtendedData>"
      "<Data name=\"GEO_ID\"><value>1400000US11001004702</value></Data>"
      "<Data name=\"NAME\"><value>47.02</value></Data>"
      "</ExtendedData>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "-77.01,38.90 -77.00,38.90 -77.00,38.91"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>";
  const auto report = parse_tract_boundaries(wrap(pm));
  REQUIRE(report.tracts.size() == 1);
  CHECK(report.tracts[0].geoid == "11001004702");
  CHECK(report.tracts[0].name == "47.02");
}

TEST_CASE("holes and multi part geometry") {
  const std::string pm =
      "<Placemark><ExtendedData><SchemaData>"
      "<SimpleData name=\"GEOID\">11001000200</SimpleData>"
      "</SchemaData></ExtendedData>"
      "<MultiGeometry>"
      "<Polygon>"
      "<outerBoundaryIs><LinearRing><coordinates>"
      "-77.05,38.90 -77.00,38.90 -77.00,38.95 -77.05,38.95"
      "</coordinates></LinearRing></outerBoundaryIs>"
      "<innerBoundaryIs><LinearRing><coordinates>"
      "-77.03,38.92 -77.02,38.92 -77.02,38.93 -77.03,38.93"
      "</coordinates></LinearRing></innerBoundaryIs>"
      "</Polygon>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "-76.99,38.90 -76.98,38.90 -76.98,38.91"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon>"
      "</MultiGeometry></Placemark>";
  const auto report = parse_tract_boundaries(wrap(pm));
  REQUIRE(report.tracts.size() == 1);
  const auto& t = report.tracts[0];
  REQUIRE(t.parts.size() == 2);
  CHECK(t.parts[0].outer.size() == 4);
  REQUIRE(t.parts[0].holes.size() == 1);
  CHECK(t.parts[0].holes[0].size() == 4);
  CHECK(t.parts[1].outer.size() == 3);
  CHECK(t.parts[1].holes.empty());
}

TEST_CASE("missing identifier fails strict and skips lenient") {
  const std::string pm =
      "<Placemark><name>anonymous</name>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "-77.01,38.90 -77.00,38.90 -77.00,38.91"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>";
  const std::string doc = wrap(good_placemark("11001000100") + pm);
  CHECK_THROWS_AS(parse_tract_boundaries(doc), ParseError);

  KmlParseOptions lenient;
  lenient.lenient = true;
  const auto report = parse_tract_boundaries(doc, lenient);
  CHECK(report.tracts.size() == 1);
  CHECK(report.skipped == 1);
  REQUIRE(!report.warnings.empty());
}

TEST_CASE("placemark without geometry is a record error") {
  const std::string pm =
      "<Placemark><ExtendedData><SchemaData>"
      "<SimpleData name=\"GEOID\">11001000300</SimpleData>"
      "</SchemaData></ExtendedData></Placemark>";
  CHECK_THROWS_AS(parse_tract_boundaries(wrap(pm)), ParseError);
  KmlParseOptions lenient;
  lenient.lenient = true;
  const auto report = parse_tract_boundaries(wrap(pm), lenient);
  CHECK(report.tracts.empty());
  CHECK(report.skipped == 1);
}

TEST_CASE("rings with fewer than three distinct points are rejected") {
  const std::string pm =
      "<Placemark><ExtendedData><SchemaData>"
      "<SimpleData name=\"GEOID\">11001000400</SimpleData>"
      "</SchemaData></ExtendedData>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "-77.01,38.90 -77.00,38.90 -77.01,38.90"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>";
  CHECK_THROWS_AS(parse_tract_boundaries(wrap(pm)), ParseError);
}

TEST_CASE("zero area rings are rejected") {
  const std::string pm =
      "<Placemark><ExtendedData><SchemaData>"
      "<SimpleData name=\"GEOID\">11001000500</SimpleData>"
      "</SchemaData></ExtendedData>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "-77.02,38.90 -77.01,38.90 -77.00,38.90"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>";
  CHECK_THROWS_AS(parse_tract_boundaries(wrap(pm)), ParseError);
}

TEST_CASE("coordinates out of range are rejected") {
  const std::string pm =
      "<Placemark><ExtendedData><SchemaData>"
      "<SimpleData name=\"GEOID\">11001000600</SimpleData>"
      "</SchemaData></ExtendedData>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "-187.01,38.90 -77.00,38.90 -77.00,38.91"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>";
  CHECK_THROWS_AS(parse_tract_boundaries(wrap(pm)), ParseError);
  const std::string pm2 =
      "<Placemark><ExtendedData><SchemaData>"
      "<SimpleData name=\"GEOID\">11001000700</SimpleData>"
      "</SchemaData></ExtendedData>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "-77.01,98.90 -77.00,38.90 -77.00,38.91"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>";
  CHECK_THROWS_AS(parse_tract_boundaries(wrap(pm2)), ParseError);
}

TEST_CASE("non numeric coordinates are rejected") {
  const std::string pm =
      "<Placemark><ExtendedData><SchemaData>"
      "<SimpleData name=\"GEOID\">11001000800</SimpleData>"
      "</SchemaData></ExtendedData>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "west,38.90 -77.00,38.90 -77.00,38.91"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>";
  CHECK_THROWS_AS(parse_tract_boundaries(wrap(pm)), ParseError);
}

TEST_CASE("duplicate geoid fails strict and is skipped lenient") {
  const std::string doc =
      wrap(good_placemark("11001000100") + good_placemark("11001000100"));
  CHECK_THROWS_AS(parse_tract_boundaries(doc), ParseError);
  KmlParseOptions lenient;
  lenient.lenient = true;
  const auto report = parse_tract_boundaries(doc, lenient);
  CHECK(report.tracts.size() == 1);
  CHECK(report.skipped == 1);
}

TEST_CASE("self intersecting rings warn but load") {
  const std::string pm =
      "<Placemark><ExtendedData><SchemaData>"
      "<SimpleData name=\"GEOID\">11001000900</SimpleData>"
      "</SchemaData></ExtendedData>"
      "<Polygon><outerBoundaryIs><LinearRing><coordinates>"
      "-77.04,38.90 -77.00,38.90 -77.00,38.93 -77.02,38.89 -77.04,38.93"
      "</coordinates></LinearRing></outerBoundaryIs></Polygon></Placemark>";
  const auto report = parse_tract_boundaries(wrap(pm));
  REQUIRE(report.tracts.size() == 1);
  CHECK(report.tracts[0].self_intersecting);
  CHECK(!report.warnings.empty());
  CHECK(report.skipped == 0);
}

TEST_CASE("malformed xml is always fatal even in lenient mode") {
  const std::string doc = "<kml><Document><Placemark><name>x</Placemark>";
  KmlParseOptions lenient;
  lenient.lenient = true;
  CHECK_THROWS_AS(parse_tract_boundaries(doc, lenient), ParseError);
}

TEST_CASE("unrelated placemark content is ignored") {
  const std::string pm =
      "<Placemark><name>label only</name>"
      "<Point><coordinates>-77.0,38.9,0</coordinates></Point>"
      "</Placemark>";
  // a point placemark has no polygon: record error strict, skip lenient
  KmlParseOptions lenient;
  lenient.lenient = true;
  const auto report =
      parse_tract_boundaries(wrap(good_placemark("11001000100") + pm), lenient);
  CHECK(report.tracts.size() == 1);
  CHECK(report.skipped == 1);
}

TEST_CASE("write then parse preserves every coordinate") {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> lat(38.0, 39.0);
  std::uniform_real_distribution<double> lon(-78.0, -77.0);
  std::uniform_int_distribution<int> extra(0, 9);

  std::vector<TractGeometry> tracts;
  for (int i = 0; i < 12; ++i) {
    TractGeometry t;
    t.geoid = "1100100" + std::to_string(1000 + i);
    t.name = "Tract " + std::to_string(i);
    TractPart part;
    const double clat = lat(rng), clon = lon(rng);
    const int n = 3 + extra(rng);
    for (int k = 0; k < n; ++k) {
      const double ang = 2.0 * 3.14159265358979323846 * k / n;
      part.outer.push_back({clat + 0.01 * std::sin(ang) + 1e-7 * extra(rng),
                            clon + 0.01 * std::cos(ang)});
    }
    t.parts.push_back(part);
    if (i % 3 == 0) {
      TractPart second;
      second.outer = {{clat + 0.05, clon},
                      {clat + 0.05, clon + 0.01},
                      {clat + 0.06, clon + 0.005}};
      t.parts.push_back(second);
    }
    tracts.push_back(t);
  }

  const std::string kml = write_tracts_kml(tracts);
  const auto report = parse_tract_boundaries(kml);
  REQUIRE(report.tracts.size() == tracts.size());
  for (std::size_t i = 0; i < tracts.size(); ++i) {
    const auto& a = tracts[i];
    const auto& b = report.tracts[i];
    CHECK(a.geoid == b.geoid);
    CHECK(a.name == b.name);
    REQUIRE(a.parts.size() == b.parts.size());
    for (std::size_t p = 0; p < a.parts.size(); ++p) {
      REQUIRE(a.parts[p].outer.size() == b.parts[p].outer.size());
      for (std::size_t k = 0; k < a.parts[p].outer.size(); ++k) {
        CHECK(a.parts[p].outer[k].lat_deg == b.parts[p].outer[k].lat_deg);
        CHECK(a.parts[p].outer[k].lon_deg == b.parts[p].outer[k].lon_deg);
      }
    }
  }
}

TEST_CASE("ring normalization drops duplicate consecutive points") {
  GeodeticRing ring = {{38.90, -77.01}, {38.90, -77.01}, {38.90, -77.00},
                       {38.91, -77.00}, {38.90, -77.01}};
  const auto out = normalize_ring(ring);
  REQUIRE(out.size() == 3);
  CHECK(out[0] == GeodeticPoint{38.90, -77.01});
}

TEST_CASE("self intersection detector on geodetic rings") {
  GeodeticRing bowtie = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK(ring_self_intersects(bowtie));
  GeodeticRing square = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  CHECK(!ring_self_intersects(square));
}

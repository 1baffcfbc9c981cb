#include "cbrs/report_io.hpp"

#include <charconv>

#include "cbrs/csv.hpp"
#include "cbrs/error.hpp"

namespace cbrs {

namespace {

Validity validity_from_name(std::string_view name, int line) {
  if (name == "clean") return Validity::clean;
  if (name == "self_intersecting_repaired") {
    return Validity::self_intersecting_repaired;
  }
  if (name == "raster_fallback") return Validity::raster_fallback;
  throw ParseError("unknown validity '" + std::string(name) + "'", line);
}

std::int64_t parse_count(std::string_view text, int line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) {
    throw ParseError("bad population '" + std::string(text) + "'", line);
  }
  return value;
}

} // namespace

std::string tracts_csv(const CityReport& report) {
  static const std::vector<std::string> header = {
      "geoid", "area_ct_m2", "area_cbrs_m2", "alp",
      "population", "pctas", "validity"};
  std::string out = csv_record(header);
  for (const TractRecord& rec : report.records) {
    const std::vector<std::string> row = {
        rec.geoid,
        format_double(rec.area_ct_m2),
        format_double(rec.area_cbrs_m2),
        format_double(rec.alp),
        std::to_string(rec.population),
        format_double(rec.pctas),
        validity_name(rec.validity)};
    out += csv_record(row);
  }
  return out;
}

std::vector<TractRecord> parse_tracts_csv(std::string_view text) {
  const CsvTable table = parse_csv(text);
  const int geoid_col = table.column("geoid");
  const int ct_col = table.column("area_ct_m2");
  const int cbrs_col = table.column("area_cbrs_m2");
  const int alp_col = table.column("alp");
  const int pop_col = table.column("population");
  const int pctas_col = table.column("pctas");
  const int validity_col = table.column("validity");
  if (geoid_col < 0 || ct_col < 0 || cbrs_col < 0 || alp_col < 0 ||
      pop_col < 0 || pctas_col < 0 || validity_col < 0) {
    throw ParseError("tract table is missing a required column");
  }
  std::vector<TractRecord> records;
  records.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const int line = static_cast<int>(r) + 2;
    TractRecord rec;
    rec.geoid = row[static_cast<std::size_t>(geoid_col)];
    rec.area_ct_m2 = parse_double(row[static_cast<std::size_t>(ct_col)]);
    rec.area_cbrs_m2 = parse_double(row[static_cast<std::size_t>(cbrs_col)]);
    rec.alp = parse_double(row[static_cast<std::size_t>(alp_col)]);
    rec.population = parse_count(row[static_cast<std::size_t>(pop_col)], line);
    rec.pctas = parse_double(row[static_cast<std::size_t>(pctas_col)]);
    rec.validity =
        validity_from_name(row[static_cast<std::size_t>(validity_col)], line);
    records.push_back(std::move(rec));
  }
  return records;
}

std::string cdf_csv(const CdfTable& table) {
  static const std::vector<std::string> header = {"value", "cum_prob"};
  std::string out = csv_record(header);
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    const std::vector<std::string> row = {format_double(table.values[i]),
                                          format_double(table.cum_prob[i])};
    out += csv_record(row);
  }
  return out;
}

CdfTable parse_cdf_csv(std::string_view text) {
  const CsvTable csv = parse_csv(text);
  const int value_col = csv.column("value");
  const int prob_col = csv.column("cum_prob");
  if (value_col < 0 || prob_col < 0) {
    throw ParseError("distribution table needs value and cum_prob columns");
  }
  CdfTable table;
  for (const auto& row : csv.rows) {
    table.values.push_back(parse_double(row[static_cast<std::size_t>(value_col)]));
    table.cum_prob.push_back(parse_double(row[static_cast<std::size_t>(prob_col)]));
  }
  return table;
}

std::string summary_text(const CityReport& report, const SummaryMetadata& meta) {
  std::string out;
  out += "city: " + report.city + "\n";
  out += "set-back distance: " + format_double(report.setback_m) + " m\n";
  if (!meta.deployment.empty()) out += "deployment: " + meta.deployment + "\n";
  if (!meta.utm_zone.empty()) out += "projection zone: UTM " + meta.utm_zone + "\n";
  if (!meta.census_vintage.empty()) {
    out += "census vintage: " + meta.census_vintage + "\n";
  }
  out += "tracts: " + std::to_string(report.tract_count) + "\n";
  out += "tracts with any allowed area: " +
         std::to_string(report.non_empty_tracts) + "\n";
  out += "fully set-back tract fraction: " +
         format_double(report.empty_tract_fraction) + "\n";
  out += "P(area loss < 0.5): " + format_double(report.prob_alp_below_half) + "\n";
  out += "total population: " + std::to_string(report.total_population) + "\n";
  out += "mean tract population: " + format_double(report.mean_population) + "\n";
  out += "median tract population: " + format_double(report.median_population) +
         "\n";
  out += "population with spectrum access: " +
         format_double(report.total_pctas) + "\n";
  out += "tracts measured by the grid oracle: " +
         std::to_string(report.raster_fallback_count) + "\n";
  out += "tracts with repaired self-intersections: " +
         std::to_string(report.self_intersecting_count) + "\n";
  return out;
}

std::string plot_data(const CdfTable& table, std::string_view city,
                      std::string_view metric) {
  std::string out = "# city ";
  out += city;
  out += " metric ";
  out += metric;
  out += "\n";
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    out += format_double(table.values[i]);
    out += '\t';
    out += format_double(table.cum_prob[i]);
    out += '\n';
  }
  return out;
}

} // namespace cbrs

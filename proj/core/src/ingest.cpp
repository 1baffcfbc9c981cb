#include "cbrs/ingest.hpp"

#include <charconv>
#include <set>

#include "cbrs/csv.hpp"
#include "cbrs/error.hpp"

namespace cbrs {

namespace {

std::string normalize_geoid(std::string value) {
  const std::size_t us = value.rfind("US");
  if (us != std::string::npos && us + 2 < value.size()) {
    value = value.substr(us + 2);
  }
  return value;
}

} // namespace

std::map<std::string, std::int64_t> parse_population_table(
    std::string_view csv_text, const PopulationTableOptions& options) {
  const CsvTable table = parse_csv(csv_text);
  const int geoid_col = table.column(options.geoid_column);
  if (geoid_col < 0) {
    throw ParseError("population table has no '" + options.geoid_column +
                     "' column");
  }
  const int pop_col = table.column(options.population_column);
  if (pop_col < 0) {
    throw ParseError("population table has no '" + options.population_column +
                     "' column");
  }

  std::map<std::string, std::int64_t> popmap;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const int line = static_cast<int>(r) + 2;  // header is line 1
    const std::string geoid =
        normalize_geoid(row[static_cast<std::size_t>(geoid_col)]);
    if (geoid.empty()) {
      throw ParseError("empty geoid", line);
    }
    const std::string& pop_text = row[static_cast<std::size_t>(pop_col)];
    std::int64_t population = 0;
    auto [ptr, ec] = std::from_chars(pop_text.data(),
                                     pop_text.data() + pop_text.size(),
                                     population);
    if (ec != std::errc{} || ptr != pop_text.data() + pop_text.size()) {
      throw ParseError("bad population value '" + pop_text + "' for geoid " +
                           geoid,
                       line);
    }
    if (population < 0) {
      throw ParseError("negative population for geoid " + geoid, line);
    }
    if (!popmap.emplace(geoid, population).second) {
      throw ParseError("duplicate geoid " + geoid + " in population table",
                       line);
    }
  }
  return popmap;
}

JoinReport join_population(std::vector<TractGeometry>& tracts,
                           const std::map<std::string, std::int64_t>& popmap,
                           bool strict) {
  JoinReport report;
  std::set<std::string> matched;
  for (auto& tract : tracts) {
    const auto it = popmap.find(tract.geoid);
    if (it == popmap.end()) {
      if (strict) {
        throw ParseError("tract " + tract.geoid +
                         " has no population table row");
      }
      tract.population = 0;
      ++report.tracts_without_population;
      report.warnings.push_back("tract " + tract.geoid +
                                ": no population row, assuming 0");
      continue;
    }
    tract.population = it->second;
    matched.insert(it->first);
  }
  for (const auto& [geoid, population] : popmap) {
    if (matched.count(geoid) != 0) continue;
    if (strict) {
      throw ParseError("population row " + geoid + " has no tract geometry");
    }
    ++report.rows_without_geometry;
    report.warnings.push_back("population row " + geoid +
                              ": no matching tract geometry");
  }
  return report;
}

} // namespace cbrs

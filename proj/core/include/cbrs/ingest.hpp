#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cbrs/geodetic.hpp"

namespace cbrs {

struct PopulationTableOptions {
  std::string geoid_column = "GEOID";
  std::string population_column = "POPULATION";
};

/// Parses a population CSV into a geoid -> population map. Raises ParseError
/// when a configured column is missing, a geoid repeats (the error names it),
/// or a population value is negative or non-numeric.
std::map<std::string, std::int64_t> parse_population_table(
    std::string_view csv_text, const PopulationTableOptions& options = {});

struct JoinReport {
  std::vector<std::string> warnings;
  std::size_t tracts_without_population = 0;  // got population 0
  std::size_t rows_without_geometry = 0;
};

/// Sets each tract's population from the map. Tracts absent from the map get
/// population 0 plus a warning; map entries with no matching geometry are
/// reported. With strict set, either condition raises ParseError instead.
JoinReport join_population(std::vector<TractGeometry>& tracts,
                           const std::map<std::string, std::int64_t>& popmap,
                           bool strict = false);

} // namespace cbrs

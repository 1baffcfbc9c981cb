#pragma once

#include <string>
#include <string_view>

#include "cbrs/metrics.hpp"

namespace cbrs {

/// Per-tract CSV: geoid,area_ct_m2,area_cbrs_m2,alp,population,pctas,validity.
/// Doubles use shortest round-trip formatting so a re-read is bit-exact.
std::string tracts_csv(const CityReport& report);
std::vector<TractRecord> parse_tracts_csv(std::string_view text);

/// CDF CSV: value,cum_prob.
std::string cdf_csv(const CdfTable& table);
CdfTable parse_cdf_csv(std::string_view text);

struct SummaryMetadata {
  std::string utm_zone;        // e.g. "18N"
  std::string census_vintage;  // recorded, never assumed
  std::string deployment;      // class name or "custom"
};

/// Human-readable city statistics block.
std::string summary_text(const CityReport& report, const SummaryMetadata& meta);

/// Two-column plot data (value <tab> cum_prob) with a "# city ... metric ..."
/// header line, for external plotting tools.
std::string plot_data(const CdfTable& table, std::string_view city,
                      std::string_view metric);

} // namespace cbrs

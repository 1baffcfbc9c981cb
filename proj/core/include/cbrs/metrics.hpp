#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cbrs/erosion.hpp"
#include "cbrs/geodetic.hpp"

namespace cbrs {

/// Area Loss Percentage: 1 - A_CBRS / A_CT, clamped to [0, 1].
/// Throws std::invalid_argument for a degenerate tract (A_CT <= 0).
double alp(double area_cbrs_m2, double area_ct_m2);

/// Population of Census Tract with Access to Spectrum: (1 - ALP) * P,
/// real-valued under the uniform-population assumption.
double pctas(double alp_value, double population);

/// Step empirical CDF with ties merged: F(x) = #(values <= x) / n.
struct CdfTable {
  std::vector<double> values;    // sorted, distinct
  std::vector<double> cum_prob;  // non-decreasing, last == 1

  double eval(double x) const;
  static CdfTable from_samples(std::vector<double> samples);  // throws if empty
};

struct TractRecord {
  std::string geoid;
  double area_ct_m2 = 0.0;
  double area_cbrs_m2 = 0.0;
  double alp = 1.0;
  std::int64_t population = 0;
  double pctas = 0.0;
  double setback_m = 0.0;
  Validity validity = Validity::clean;
};

struct CityReport {
  std::string city;
  double setback_m = 0.0;
  std::vector<TractRecord> records;  // sorted by geoid

  std::size_t tract_count = 0;
  std::size_t non_empty_tracts = 0;       // alp < 1
  double empty_tract_fraction = 0.0;      // #(alp == 1) / n
  double prob_alp_below_half = 0.0;       // strict inequality
  double mean_population = 0.0;
  double median_population = 0.0;
  std::int64_t total_population = 0;
  double total_pctas = 0.0;
  std::size_t raster_fallback_count = 0;
  std::size_t self_intersecting_count = 0;

  CdfTable alp_cdf;
  CdfTable pctas_cdf;
};

/// One record per tract plus the city-level aggregates and CDFs. `tracts`
/// and `erosions` are parallel; records are sorted by geoid. Throws on an
/// empty input.
CityReport build_city_report(std::string city,
                             std::span<const TractGeometry> tracts,
                             std::span<const ErosionResult> erosions,
                             double setback_m);

} // namespace cbrs

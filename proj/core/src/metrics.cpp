#include "cbrs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbrs {

double alp(double area_cbrs_m2, double area_ct_m2) {
  if (!(area_ct_m2 > 0.0)) {
    throw std::invalid_argument("tract area must be positive");
  }
  const double value = 1.0 - area_cbrs_m2 / area_ct_m2;
  return std::clamp(value, 0.0, 1.0);
}

double pctas(double alp_value, double population) {
  return (1.0 - alp_value) * population;
}

double CdfTable::eval(double x) const {
  const auto it = std::upper_bound(values.begin(), values.end(), x);
  if (it == values.begin()) return 0.0;
  return cum_prob[static_cast<std::size_t>(it - values.begin()) - 1];
}

CdfTable CdfTable::from_samples(std::vector<double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empty sample set has no distribution");
  }
  std::sort(samples.begin(), samples.end());
  CdfTable table;
  const double n = static_cast<double>(samples.size());
  std::size_t seen = 0;
  for (std::size_t i = 0; i < samples.size();) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    seen += j - i;
    table.values.push_back(samples[i]);
    table.cum_prob.push_back(static_cast<double>(seen) / n);
    i = j;
  }
  table.cum_prob.back() = 1.0;
  return table;
}

CityReport build_city_report(std::string city,
                             std::span<const TractGeometry> tracts,
                             std::span<const ErosionResult> erosions,
                             double setback_m) {
  if (tracts.empty() || tracts.size() != erosions.size()) {
    throw std::invalid_argument("tract and erosion lists must be non-empty and equal length");
  }
  CityReport report;
  report.city = std::move(city);
  report.setback_m = setback_m;
  report.records.reserve(tracts.size());
  for (std::size_t i = 0; i < tracts.size(); ++i) {
    const TractGeometry& tract = tracts[i];
    const ErosionResult& erosion = erosions[i];
    TractRecord rec;
    rec.geoid = tract.geoid;
    rec.area_ct_m2 = erosion.area_ct_m2;
    rec.area_cbrs_m2 = erosion.area_cbrs_m2;
    rec.alp = alp(erosion.area_cbrs_m2, erosion.area_ct_m2);
    rec.population = tract.population.value_or(0);
    rec.pctas = pctas(rec.alp, static_cast<double>(rec.population));
    rec.setback_m = setback_m;
    rec.validity = erosion.validity;
    report.records.push_back(std::move(rec));
  }
  std::sort(report.records.begin(), report.records.end(),
            [](const TractRecord& a, const TractRecord& b) {
              return a.geoid < b.geoid;
            });

  report.tract_count = report.records.size();
  std::vector<double> alps, pctases, populations;
  alps.reserve(report.tract_count);
  pctases.reserve(report.tract_count);
  populations.reserve(report.tract_count);
  std::size_t empty_count = 0;
  std::size_t below_half = 0;
  for (const TractRecord& rec : report.records) {
    alps.push_back(rec.alp);
    pctases.push_back(rec.pctas);
    populations.push_back(static_cast<double>(rec.population));
    if (rec.alp == 1.0) {
      ++empty_count;
    } else {
      ++report.non_empty_tracts;
    }
    if (rec.alp < 0.5) ++below_half;
    report.total_population += rec.population;
    report.total_pctas += rec.pctas;
    if (rec.validity == Validity::raster_fallback) ++report.raster_fallback_count;
    if (rec.validity == Validity::self_intersecting_repaired) {
      ++report.self_intersecting_count;
    }
  }
  const double n = static_cast<double>(report.tract_count);
  report.empty_tract_fraction = static_cast<double>(empty_count) / n;
  report.prob_alp_below_half = static_cast<double>(below_half) / n;
  report.mean_population =
      static_cast<double>(report.total_population) / n;
  std::sort(populations.begin(), populations.end());
  const std::size_t mid = populations.size() / 2;
  report.median_population =
      populations.size() % 2 == 1
          ? populations[mid]
          : (populations[mid - 1] + populations[mid]) / 2.0;
  report.alp_cdf = CdfTable::from_samples(std::move(alps));
  report.pctas_cdf = CdfTable::from_samples(std::move(pctases));
  return report;
}

} // namespace cbrs

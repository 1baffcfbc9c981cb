#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cbrs/erosion.hpp"
#include "cbrs/ingest.hpp"
#include "cbrs/metrics.hpp"
#include "cbrs/projection.hpp"
#include "cbrs/propagation.hpp"

namespace cbrs {

struct RunConfig {
  std::vector<std::string> inputs;           // .kml or normalized .geojson
  std::string population_csv;
  std::optional<DeploymentClass> deployment; // exactly one of these two
  std::optional<double> setback_m;
  double spacing_m = 0.0;                    // 0 => d/2
  double raster_resolution_m = 0.0;          // 0 => d/20 capped
  std::string out_dir;
  std::vector<std::string> formats = {"csv", "geojson", "cdf", "summary"};
  bool lenient = false;
  bool strict_join = false;
  bool densified_vertices = false;
  unsigned jobs = 0;                         // 0 => TRACT_ERODER_JOBS or hw
  std::string city;                          // label; default from first input
  std::string census_vintage = "unspecified";
  PopulationTableOptions population_options;
};

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 2 partial (skipped tracts in lenient mode)
  CityReport report;
  std::vector<std::string> warnings;
  UtmZone zone;
  double setback_m = 0.0;
  double spacing_m = 0.0;
  std::filesystem::path out_dir;
};

/// Runs the whole pipeline: ingest -> join -> project -> erode (parallel) ->
/// metrics -> artifacts on disk (tracts.csv, cdf_alp.csv, cdf_pctas.csv,
/// summary.txt, allowed.geojson, manifest.json, filtered by formats).
/// Outputs are byte-identical for identical config regardless of jobs.
/// Throws on fatal input errors (CLI maps those to exit 1).
RunOutcome run_analysis(const RunConfig& config);

/// Emits cdf_alp.dat / cdf_pctas.dat next to a prior run's CSV outputs.
/// Returns the labeled files written; throws if no prior run is found.
std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& out_dir);

/// Parallelism degree: explicit value, else TRACT_ERODER_JOBS, else
/// hardware_concurrency.
unsigned resolve_jobs(unsigned requested);

} // namespace cbrs

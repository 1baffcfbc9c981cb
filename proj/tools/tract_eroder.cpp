// Command line front end: computes propagation set-back distances and runs
// the tract erosion pipeline.
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbrs/csv.hpp"
#include "cbrs/error.hpp"
#include "cbrs/pipeline.hpp"
#include "cbrs/propagation.hpp"
#include "cbrs/version.hpp"

namespace {

const std::map<std::string, cbrs::DeploymentClass> kDeploymentNames = {
    {"outdoor", cbrs::DeploymentClass::outdoor},
    {"indoor-residential", cbrs::DeploymentClass::indoor_residential},
    {"indoor-commercial", cbrs::DeploymentClass::indoor_commercial},
};

struct SetbackArgs {
  std::string deployment;
  double eirp_dbm = cbrs::kDefaultEirpDbm;
  double limit_dbm = cbrs::kDefaultBoundaryLimitDbm;
  double building_loss_db = 0.0;
  double freq_mhz = cbrs::kDefaultFreqMhz;
};

struct AnalyzeArgs {
  std::vector<std::string> kml;
  std::string population;
  std::string deployment;
  double setback_m = 0.0;
  bool setback_given = false;
  std::string out;
  double spacing_m = 0.0;
  double raster_res_m = 0.0;
  bool lenient = false;
  unsigned jobs = 0;
  std::string city;
  std::vector<std::string> formats = {"csv", "geojson", "cdf", "summary"};
  std::string geoid_col = "GEOID";
  std::string population_col = "POPULATION";
  std::string census_vintage = "unspecified";
  bool strict_join = false;
  bool densified_vertices = false;
};

int run_setback(const SetbackArgs& args) {
  cbrs::SetbackSpec spec;
  if (!args.deployment.empty()) {
    spec = cbrs::SetbackSpec::for_class(kDeploymentNames.at(args.deployment));
  } else {
    spec.eirp_dbm = args.eirp_dbm;
    spec.boundary_limit_dbm = args.limit_dbm;
    spec.building_loss_db = args.building_loss_db;
    spec.freq_mhz = args.freq_mhz;
  }
  const double pl = cbrs::required_path_loss_db(spec);
  const double d = cbrs::fspl_distance_m(pl, spec.freq_mhz);
  std::printf("required path loss: %s dB\n", cbrs::format_double(pl).c_str());
  std::printf("set-back distance: %s m\n", cbrs::format_double(d).c_str());
  return 0;
}

int run_analyze(const AnalyzeArgs& args) {
  cbrs::RunConfig config;
  config.inputs = args.kml;
  config.population_csv = args.population;
  if (!args.deployment.empty()) {
    config.deployment = kDeploymentNames.at(args.deployment);
  }
  if (args.setback_given) config.setback_m = args.setback_m;
  config.spacing_m = args.spacing_m;
  config.raster_resolution_m = args.raster_res_m;
  config.out_dir = args.out;
  config.formats = args.formats;
  config.lenient = args.lenient;
  config.strict_join = args.strict_join;
  config.densified_vertices = args.densified_vertices;
  config.jobs = args.jobs;
  config.city = args.city;
  config.census_vintage = args.census_vintage;
  config.population_options.geoid_column = args.geoid_col;
  config.population_options.population_column = args.population_col;

  const cbrs::RunOutcome outcome = cbrs::run_analysis(config);
  for (const auto& warning : outcome.warnings) {
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  }
  std::printf("%zu tracts analyzed at %s m set-back, outputs in %s\n",
              outcome.report.tract_count,
              cbrs::format_double(outcome.setback_m).c_str(),
              outcome.out_dir.string().c_str());
  return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census-tract set-back erosion and spectrum access metrics"};
  app.set_version_flag("--version",
                       std::string(cbrs::kToolName) + " " + cbrs::kToolVersion);
  app.require_subcommand(1);

  SetbackArgs setback_args;
  CLI::App* setback = app.add_subcommand(
      "setback", "Print the set-back distance for a link budget");
  setback
      ->add_option("--deployment", setback_args.deployment,
                   "Deployment class: outdoor, indoor-residential, "
                   "indoor-commercial")
      ->check(CLI::IsMember({"outdoor", "indoor-residential",
                             "indoor-commercial"}));
  setback->add_option("--eirp-dbm", setback_args.eirp_dbm,
                      "Transmit EIRP in dBm per 10 MHz");
  setback->add_option("--limit-dbm", setback_args.limit_dbm,
                      "Allowed signal level at the tract boundary, dBm");
  setback->add_option("--building-loss-db", setback_args.building_loss_db,
                      "Building penetration loss, dB");
  setback->add_option("--freq-mhz", setback_args.freq_mhz, "Frequency, MHz");

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Erode tract boundaries and report access metrics");
  analyze->add_option("--kml", analyze_args.kml,
                      "Boundary file(s), KML or GeoJSON")
      ->required()
      ->expected(-1);
  analyze->add_option("--population", analyze_args.population,
                      "Population CSV keyed by geoid");
  auto* dep_opt =
      analyze
          ->add_option("--deployment", analyze_args.deployment,
                       "Deployment class: outdoor, indoor-residential, "
                       "indoor-commercial")
          ->check(CLI::IsMember({"outdoor", "indoor-residential",
                                 "indoor-commercial"}));
  auto* setback_opt = analyze->add_option("--setback-m", analyze_args.setback_m,
                                          "Explicit set-back distance, meters");
  dep_opt->excludes(setback_opt);
  analyze->add_option("--out", analyze_args.out, "Output directory")->required();
  analyze->add_option("--spacing-m", analyze_args.spacing_m,
                      "Boundary densification spacing (default set-back / 2)");
  analyze->add_option("--raster-res-m", analyze_args.raster_res_m,
                      "Grid oracle resolution (default set-back / 20)");
  analyze->add_flag("--lenient", analyze_args.lenient,
                    "Skip malformed placemarks instead of failing");
  analyze->add_option("--jobs", analyze_args.jobs,
                      "Worker threads (default TRACT_ERODER_JOBS or all cores)");
  analyze->add_option("--city", analyze_args.city,
                      "City label (default: first input file name)");
  analyze->add_option("--formats", analyze_args.formats,
                      "Artifacts to write: csv geojson cdf summary");
  analyze->add_option("--geoid-col", analyze_args.geoid_col,
                      "Geoid column in the population CSV");
  analyze->add_option("--population-col", analyze_args.population_col,
                      "Population column in the population CSV");
  analyze->add_option("--census-vintage", analyze_args.census_vintage,
                      "Boundary vintage recorded in the outputs");
  analyze->add_flag("--strict-join", analyze_args.strict_join,
                    "Fail when geometry and population tables disagree");
  analyze->add_flag("--densified-vertices", analyze_args.densified_vertices,
                    "Erode every densified boundary point, not just input "
                    "vertices");

  std::string plot_dir;
  CLI::App* plotdata = app.add_subcommand(
      "plotdata", "Re-emit distribution tables as plain plot data");
  plotdata->add_option("--out", plot_dir, "Directory of a previous analysis")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (setback->parsed()) return run_setback(setback_args);
    if (analyze->parsed()) {
      analyze_args.setback_given = setback_opt->count() > 0;
      if (analyze_args.deployment.empty() && !analyze_args.setback_given) {
        std::fprintf(stderr,
                     "error: one of --deployment or --setback-m is required\n");
        return 1;
      }
      return run_analyze(analyze_args);
    }
    if (plotdata->parsed()) {
      for (const auto& path : cbrs::write_plot_data(plot_dir)) {
        std::printf("%s\n", path.string().c_str());
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

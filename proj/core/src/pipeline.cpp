#include "cbrs/pipeline.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "cbrs/csv.hpp"
#include "cbrs/error.hpp"
#include "cbrs/geojson.hpp"
#include "cbrs/kml.hpp"
#include "cbrs/report_io.hpp"
#include "cbrs/version.hpp"

namespace cbrs {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw std::runtime_error("short write to " + path.string());
  }
}

bool has_format(const RunConfig& config, std::string_view format) {
  for (const auto& f : config.formats) {
    if (f == format) return true;
  }
  return false;
}

std::string zone_label(UtmZone zone) {
  return std::to_string(zone.zone) +
         (zone.hemisphere == Hemisphere::north ? "N" : "S");
}

} // namespace

unsigned resolve_jobs(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TRACT_ERODER_JOBS")) {
    const int value = std::atoi(env);
    if (value > 0) return static_cast<unsigned>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

RunOutcome run_analysis(const RunConfig& config) {
  if (config.inputs.empty()) {
    throw std::invalid_argument("no boundary inputs given");
  }
  if (config.deployment.has_value() == config.setback_m.has_value()) {
    throw std::invalid_argument(
        "exactly one of deployment class and explicit set-back is required");
  }
  if (config.out_dir.empty()) {
    throw std::invalid_argument("no output directory given");
  }

  RunOutcome outcome;
  std::size_t skipped = 0;

  // ingest
  std::vector<TractGeometry> tracts;
  std::set<std::string> seen;
  for (const auto& input : config.inputs) {
    const std::filesystem::path path(input);
    const std::string text = read_file(path);
    std::vector<TractGeometry> batch;
    const auto ext = path.extension().string();
    if (ext == ".geojson" || ext == ".json") {
      batch = tracts_from_geojson(text);
    } else {
      KmlParseOptions kml_options;
      kml_options.lenient = config.lenient;
      IngestReport ingest = parse_tract_boundaries(text, kml_options);
      for (auto& w : ingest.warnings) {
        outcome.warnings.push_back(path.filename().string() + ": " + std::move(w));
      }
      skipped += ingest.skipped;
      batch = std::move(ingest.tracts);
    }
    for (auto& tract : batch) {
      if (!seen.insert(tract.geoid).second) {
        if (!config.lenient) {
          throw ParseError("tract " + tract.geoid +
                           " appears in more than one input");
        }
        outcome.warnings.push_back("tract " + tract.geoid +
                                   ": repeated across inputs, keeping the first");
        ++skipped;
        continue;
      }
      tracts.push_back(std::move(tract));
    }
  }
  if (tracts.empty()) {
    throw ParseError("no tracts survived ingest");
  }

  // population join
  if (!config.population_csv.empty()) {
    const auto popmap = parse_population_table(
        read_file(config.population_csv), config.population_options);
    JoinReport join = join_population(tracts, popmap, config.strict_join);
    for (auto& w : join.warnings) outcome.warnings.push_back(std::move(w));
  } else {
    outcome.warnings.push_back(
        "no population table; population-weighted metrics are zero");
    for (auto& tract : tracts) tract.population = 0;
  }

  // set-back
  double setback = 0.0;
  std::string deployment_label = "custom";
  if (config.deployment.has_value()) {
    setback = setback_for_deployment(*config.deployment);
    deployment_label = deployment_class_name(*config.deployment);
  } else {
    setback = *config.setback_m;
    if (!(setback > 0.0)) {
      throw std::invalid_argument("set-back must be positive");
    }
  }
  outcome.setback_m = setback;
  outcome.spacing_m =
      config.spacing_m > 0.0 ? config.spacing_m : setback / 2.0;

  // one projection zone for the whole city
  std::vector<GeodeticPoint> all_points;
  for (const auto& tract : tracts) {
    for (const auto& part : tract.parts) {
      all_points.insert(all_points.end(), part.outer.begin(), part.outer.end());
    }
  }
  const UtmZone zone = select_utm_zone(all_points);
  outcome.zone = zone;

  std::vector<std::vector<PlanarPolygon>> planar(tracts.size());
  for (std::size_t i = 0; i < tracts.size(); ++i) {
    for (const auto& part : tracts[i].parts) {
      PlanarPolygon poly;
      poly.outer.reserve(part.outer.size());
      for (const auto& p : part.outer) {
        poly.outer.push_back(to_planar(geodetic_to_utm(p, zone)));
      }
      for (const auto& hole : part.holes) {
        PlanarRing ring;
        ring.reserve(hole.size());
        for (const auto& p : hole) {
          ring.push_back(to_planar(geodetic_to_utm(p, zone)));
        }
        poly.holes.push_back(std::move(ring));
      }
      planar[i].push_back(std::move(poly));
    }
  }

  // erosion, parallel over tracts; results land in a fixed slot per tract so
  // the output does not depend on the thread count
  ErodeOptions erode_options;
  erode_options.spacing_m = config.spacing_m;
  erode_options.raster_resolution_m = config.raster_resolution_m;
  erode_options.densified_vertices = config.densified_vertices;

  std::vector<ErosionResult> erosions(tracts.size());
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tracts.size()) break;
      try {
        erosions[i] = erode_tract(planar[i], setback, erode_options,
                                  tracts[i].self_intersecting);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  unsigned jobs = resolve_jobs(config.jobs);
  if (jobs > tracts.size()) jobs = static_cast<unsigned>(tracts.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::string city = config.city;
  if (city.empty()) {
    city = std::filesystem::path(config.inputs.front()).stem().string();
  }
  outcome.report = build_city_report(city, tracts, erosions, setback);

  // artifacts
  const std::filesystem::path out_dir(config.out_dir);
  std::filesystem::create_directories(out_dir);
  outcome.out_dir = out_dir;

  SummaryMetadata meta;
  meta.utm_zone = zone_label(zone);
  meta.census_vintage = config.census_vintage;
  meta.deployment = deployment_label;

  if (has_format(config, "csv")) {
    write_file(out_dir / "tracts.csv", tracts_csv(outcome.report));
  }
  if (has_format(config, "cdf")) {
    write_file(out_dir / "cdf_alp.csv", cdf_csv(outcome.report.alp_cdf));
    write_file(out_dir / "cdf_pctas.csv", cdf_csv(outcome.report.pctas_cdf));
  }
  if (has_format(config, "summary")) {
    write_file(out_dir / "summary.txt", summary_text(outcome.report, meta));
  }
  if (has_format(config, "geojson")) {
    ordered_json fc;
    fc["type"] = "FeatureCollection";
    ordered_json features = ordered_json::array();
    // records are geoid-sorted; erosions follow ingest order, so index them
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < tracts.size(); ++i) index[tracts[i].geoid] = i;
    for (const TractRecord& rec : outcome.report.records) {
      const ErosionResult& erosion = erosions[index[rec.geoid]];
      ordered_json feature;
      feature["type"] = "Feature";
      ordered_json props;
      props["geoid"] = rec.geoid;
      props["alp"] = rec.alp;
      props["pctas"] = rec.pctas;
      props["validity"] = validity_name(rec.validity);
      feature["properties"] = std::move(props);
      if (erosion.allowed.empty()) {
        feature["geometry"] = nullptr;
      } else {
        std::vector<std::pair<GeodeticRing, std::vector<GeodeticRing>>> parts;
        for (const PlanarPolygon& poly : erosion.allowed) {
          GeodeticRing outer;
          outer.reserve(poly.outer.size());
          for (const PlanarPoint& p : poly.outer) {
            outer.push_back(utm_to_geodetic(
                {p.x, p.y, zone.zone, zone.hemisphere}));
          }
          std::vector<GeodeticRing> holes;
          for (const PlanarRing& hole : poly.holes) {
            GeodeticRing ring;
            ring.reserve(hole.size());
            for (const PlanarPoint& p : hole) {
              ring.push_back(utm_to_geodetic(
                  {p.x, p.y, zone.zone, zone.hemisphere}));
            }
            holes.push_back(std::move(ring));
          }
          parts.emplace_back(std::move(outer), std::move(holes));
        }
        feature["geometry"] = multipolygon_geometry(parts);
      }
      features.push_back(std::move(feature));
    }
    fc["features"] = std::move(features);
    write_file(out_dir / "allowed.geojson", fc.dump(2) + "\n");
  }

  ordered_json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["city"] = city;
  manifest["inputs"] = config.inputs;
  manifest["population_csv"] = config.population_csv;
  manifest["deployment"] = deployment_label;
  manifest["setback_m"] = setback;
  manifest["spacing_m"] = outcome.spacing_m;
  manifest["raster_resolution_m"] =
      config.raster_resolution_m > 0.0 ? config.raster_resolution_m
                                       : setback / 20.0;
  manifest["utm_zone"] = meta.utm_zone;
  manifest["census_vintage"] = config.census_vintage;
  manifest["tract_count"] = outcome.report.tract_count;
  manifest["skipped"] = skipped;
  manifest["lenient"] = config.lenient;
  manifest["strict_join"] = config.strict_join;
  manifest["densified_vertices"] = config.densified_vertices;
  manifest["formats"] = config.formats;
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");

  outcome.exit_code = skipped > 0 ? 2 : 0;
  return outcome;
}

std::vector<std::filesystem::path> write_plot_data(
    const std::filesystem::path& out_dir) {
  const auto alp_path = out_dir / "cdf_alp.csv";
  const auto pctas_path = out_dir / "cdf_pctas.csv";
  if (!std::filesystem::exists(alp_path) ||
      !std::filesystem::exists(pctas_path)) {
    throw ParseError("no distribution tables under " + out_dir.string() +
                     "; run an analysis with the cdf format first");
  }
  std::string city = out_dir.filename().string();
  const auto manifest_path = out_dir / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    try {
      const auto manifest = ordered_json::parse(read_file(manifest_path));
      city = manifest.value("city", city);
    } catch (const std::exception&) {
      // manifest is advisory here; the directory name stands in
    }
  }
  std::vector<std::filesystem::path> written;
  const CdfTable alp_cdf = parse_cdf_csv(read_file(alp_path));
  const auto alp_out = out_dir / "cdf_alp.dat";
  write_file(alp_out, plot_data(alp_cdf, city, "alp"));
  written.push_back(alp_out);
  const CdfTable pctas_cdf = parse_cdf_csv(read_file(pctas_path));
  const auto pctas_out = out_dir / "cdf_pctas.dat";
  write_file(pctas_out, plot_data(pctas_cdf, city, "pctas"));
  written.push_back(pctas_out);
  return written;
}

} // namespace cbrs

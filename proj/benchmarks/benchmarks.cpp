// Microbenchmarks for the hot paths: densification, the per-vertex set-back
// solver, the raster oracle, projection and KML ingest.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "cbrs/erosion.hpp"
#include "cbrs/kml.hpp"
#include "cbrs/planar.hpp"
#include "cbrs/projection.hpp"
#include "cbrs/propagation.hpp"

namespace {

using namespace cbrs;

PlanarPolygon regular_polygon(int n, double radius) {
  PlanarPolygon poly;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    poly.outer.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return poly;
}

PlanarPolygon rough_star(int n, double radius, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> spoke(0.55, 1.0);
  PlanarPolygon poly;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    const double r = radius * spoke(rng);
    poly.outer.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return poly;
}

void BM_SetbackDistance(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(setback_for_deployment(DeploymentClass::indoor_residential));
  }
}
BENCHMARK(BM_SetbackDistance);

void BM_Densify(benchmark::State& state) {
  const auto poly = regular_polygon(static_cast<int>(state.range(0)), 2000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(densify(poly, 105.0));
  }
}
BENCHMARK(BM_Densify)->Arg(8)->Arg(32)->Arg(128);

void BM_ErodeConvex(benchmark::State& state) {
  const auto poly = regular_polygon(static_cast<int>(state.range(0)), 2000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(erode_polygon(poly, 210.0));
  }
}
BENCHMARK(BM_ErodeConvex)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ErodeStar(benchmark::State& state) {
  const auto poly = rough_star(static_cast<int>(state.range(0)), 2000.0, 7u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(erode_polygon(poly, 210.0));
  }
}
BENCHMARK(BM_ErodeStar)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ErodeDensifiedVertices(benchmark::State& state) {
  const auto poly = regular_polygon(32, 2000.0);
  ErodeOptions options;
  options.densified_vertices = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(erode_polygon(poly, 210.0, options));
  }
}
BENCHMARK(BM_ErodeDensifiedVertices)->Unit(benchmark::kMillisecond);

void BM_RasterOracle(benchmark::State& state) {
  const auto poly = regular_polygon(32, 2000.0);
  const double resolution = 210.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(raster_allowed_area(poly, 210.0, resolution));
  }
}
BENCHMARK(BM_RasterOracle)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ProjectionRoundTrip(benchmark::State& state) {
  const GeodeticPoint p{38.905, -77.03};
  const auto zone = select_utm_zone(std::span(&p, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(utm_to_geodetic(geodetic_to_utm(p, zone)));
  }
}
BENCHMARK(BM_ProjectionRoundTrip);

void BM_KmlParse(benchmark::State& state) {
  std::vector<TractGeometry> tracts(static_cast<std::size_t>(state.range(0)));
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);
  for (std::size_t t = 0; t < tracts.size(); ++t) {
    auto& tract = tracts[t];
    tract.geoid = "110010" + std::to_string(10000 + t);
    GeodeticRing ring;
    for (int i = 0; i < 24; ++i) {
      const double a = 2.0 * M_PI * i / 24;
      ring.push_back({38.9 + 0.01 * std::sin(a) + jitter(rng) * 0.1,
                      -77.0 + 0.01 * std::cos(a) + jitter(rng) * 0.1});
    }
    tract.parts.push_back({ring, {}});
  }
  const std::string kml = write_tracts_kml(tracts);
  state.counters["bytes"] = static_cast<double>(kml.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_tract_boundaries(kml));
  }
}
BENCHMARK(BM_KmlParse)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// oceandc: build, inspect and classify harmonized Earth-Observation data
// cubes.
//
//   oceandc build --config <path> [--jobs N] [--json]
//   oceandc info <cube.nc>
//   oceandc classify <cube.nc> --index NDWI --time 0 --out <path.tif>
//
// Exit codes: 0 success, 2 config error, 3 pipeline error, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oceandc/oceandc.hpp"

namespace {

int exit_code_for(oceandc::Errc code) {
  switch (code) {
    case oceandc::Errc::config_error:
      return 2;
    case oceandc::Errc::io_error:
    case oceandc::Errc::write_error:
      return 4;
    default:
      return 3;
  }
}

int run_build(const std::string& config_path, int jobs, bool json_out) {
  oceandc::BuildConfig cfg = oceandc::load_build_config(config_path);
  oceandc::BuildSummary summary = oceandc::run_build(cfg, jobs);

  if (json_out) {
    nlohmann::json j;
    j["output"] = summary.output;
    j["grid"] = {{"epsg", summary.grid.epsg},
                 {"width", summary.grid.width},
                 {"height", summary.grid.height},
                 {"resolution", summary.grid.pixel_size_x},
                 {"origin_x", summary.grid.origin_x},
                 {"origin_y", summary.grid.origin_y}};
    for (const auto& s : summary.slices) {
      j["slices"].push_back({{"id", s.id},
                             {"sensor", oceandc::sensor_name(s.sensor)},
                             {"time", oceandc::format_iso8601_utc(s.time)},
                             {"fill_fraction", s.fill_fraction}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "wrote " << summary.output << "\n"
              << "grid: " << summary.grid.width << "x" << summary.grid.height
              << " @ " << summary.grid.pixel_size_x << " EPSG:"
              << summary.grid.epsg << "\n"
              << "slices: " << summary.slices.size() << "\n";
    for (const auto& s : summary.slices) {
      std::printf("  %s  %-9s  %s  fill %5.1f%%\n",
                  oceandc::format_iso8601_utc(s.time).c_str(),
                  oceandc::sensor_name(s.sensor), s.id.c_str(),
                  100.0 * s.fill_fraction);
    }
  }
  return 0;
}

int run_info(const std::string& path) {
  oceandc::HyperCube cube = oceandc::read_netcdf(path);
  std::printf("dimensions: time=%zu band=%d y=%d x=%d\n", cube.times.size(),
              oceandc::kBandCount, cube.grid.height, cube.grid.width);
  std::printf("crs: EPSG:%d, %g x %g per pixel, origin (%.6f, %.6f)\n",
              cube.grid.epsg, cube.grid.pixel_size_x, cube.grid.pixel_size_y,
              cube.grid.origin_x, cube.grid.origin_y);
  std::printf("time slices:\n");
  for (std::size_t t = 0; t < cube.times.size(); ++t)
    std::printf("  [%zu] %s  %-9s  %s\n", t,
                oceandc::format_iso8601_utc(cube.times[t]).c_str(),
                oceandc::sensor_name(cube.slices[t].sensor),
                cube.slices[t].source_id.c_str());
  std::printf("band availability (fill fraction per slice):\n");
  for (int id = 1; id <= oceandc::kBandCount; ++id) {
    std::printf("  %2d %-16s", id, oceandc::band_name(id).c_str());
    for (std::size_t t = 0; t < cube.times.size(); ++t)
      std::printf(" %5.1f%%", 100.0 * cube.plane_fill_fraction(t, id));
    std::printf("\n");
  }
  return 0;
}

int run_classify(const std::string& path, const std::string& index, int time,
                 const std::string& out) {
  oceandc::HyperCube cube = oceandc::read_netcdf(path);
  int id = oceandc::band_id_of(index);
  if (time < 0 || time >= static_cast<int>(cube.times.size()))
    throw oceandc::Error(oceandc::Errc::config_error,
                         "time index " + std::to_string(time) +
                             " out of range for " +
                             std::to_string(cube.times.size()) + " slices");
  oceandc::ClassScheme scheme =
      oceandc::scheme_for(id, cube.slices[time].sensor);
  oceandc::Raster2D plane = cube.plane_raster(time, id);
  oceandc::write_geotiff(oceandc::classify(plane, id, scheme), out);
  std::cout << "wrote " << out << " (" << scheme.classes.size()
            << " classes, scheme for "
            << oceandc::sensor_name(cube.slices[time].sensor) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ocean-DC: harmonized multi-sensor Earth-Observation data cubes"};
  app.require_subcommand(1);

  std::string config_path;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  bool json_out = false;
  CLI::App* build = app.add_subcommand("build", "build a cube from a config");
  build->add_option("--config", config_path, "JSON build configuration")
      ->required();
  build->add_option("--jobs", jobs, "scene-level worker threads");
  build->add_flag("--json", json_out, "machine-readable summary on stdout");

  std::string info_path;
  CLI::App* info = app.add_subcommand("info", "describe a cube file");
  info->add_option("cube", info_path, "NetCDF cube path")->required();

  std::string cls_path, cls_index, cls_out;
  int cls_time = 0;
  CLI::App* classify = app.add_subcommand("classify", "export a class raster");
  classify->add_option("cube", cls_path, "NetCDF cube path")->required();
  classify->add_option("--index", cls_index, "index name (NDWI, WRI-2, OSI)")
      ->required();
  classify->add_option("--time", cls_time, "time slice index");
  classify->add_option("--out", cls_out, "output GeoTIFF path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (build->parsed()) return run_build(config_path, jobs, json_out);
    if (info->parsed()) return run_info(info_path);
    if (classify->parsed())
      return run_classify(cls_path, cls_index, cls_time, cls_out);
  } catch (const oceandc::Error& e) {
    std::cerr << "oceandc: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "oceandc: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

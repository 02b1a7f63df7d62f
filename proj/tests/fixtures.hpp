#pragma once

// Synthetic end-to-end build fixtures: per-band GeoTIFFs at native
// resolutions, sidecar metadata, an AOI shapefile and a config document,
// written into a TempDir.

#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "helpers.hpp"

namespace testutil {

struct FixtureScene {
  oceandc::Sensor sensor;
  std::string stamp;  // ISO-8601
  std::string id;
  int epsg = 32634;
};

struct BuildFixture {
  std::string config_path;
  std::string output_path;
  nlohmann::json config;
};

// Writes one scene's band files at Sentinel-2 (10/20/60 m) or Landsat
// (30 m) native resolutions covering [min_x, max_x] x [min_y, max_y] in
// the scene's CRS, with DN values a reflectance-style decode maps into
// range.
inline nlohmann::json write_scene_files(const TempDir& dir,
                                        const FixtureScene& fs,
                                        double min_x, double min_y,
                                        double max_x, double max_y,
                                        std::mt19937& rng) {
  using namespace oceandc;
  nlohmann::json bands = nlohmann::json::object();

  auto grid_for = [&](double res) {
    double ox = std::floor(min_x / res) * res - 2 * res;
    double oy = std::ceil(max_y / res) * res + 2 * res;
    int w = static_cast<int>(std::ceil((max_x - ox) / res)) + 2;
    int h = static_cast<int>(std::ceil((oy - min_y) / res)) + 2;
    return GridSpec{fs.epsg, ox, oy, res, res, w, h};
  };

  std::uniform_int_distribution<int> refl_dn(3000, 12000);
  std::uniform_int_distribution<int> l2_dn(9000, 38000);
  std::uniform_int_distribution<int> thermal_dn(22000, 38000);

  for (const auto& [label, band_id] : sensor_band_mapping(fs.sensor)) {
    double res;
    if (fs.sensor == Sensor::Sentinel2) {
      if (label == "B02" || label == "B03" || label == "B04" || label == "B08")
        res = 10;
      else if (label == "B01" || label == "B09" || label == "B10")
        res = 60;
      else
        res = 20;
    } else {
      res = 30;  // synthetic Landsat keeps every band at 30 m
    }
    GridSpec g = grid_for(res);
    Raster2D r(g);
    bool thermal = band_id == band::tirs1 || band_id == band::tirs2;
    for (auto& v : r.values()) {
      int dn = thermal ? thermal_dn(rng)
                       : (fs.sensor == Sensor::Sentinel2 ? refl_dn(rng)
                                                         : l2_dn(rng));
      v = static_cast<float>(dn);
    }
    GeoTiffWriteOptions opt;
    opt.sample_format = TiffSampleFormat::U16;
    std::string path = dir.file(fs.id + "_" + label + ".tif");
    write_geotiff(r, path, opt);
    bands[label] = path;
  }
  return bands;
}

// 2 Sentinel-2 + 1 Landsat-8 scenes over one AOI; returns the config.
inline BuildFixture make_build_fixture(const TempDir& dir, double aoi_size = 500,
                                       bool cross_zone = false,
                                       unsigned seed = 1234) {
  using namespace oceandc;
  std::mt19937 rng(seed);

  const double x0 = 500050, y0 = 4199450;
  const double x1 = x0 + aoi_size, y1 = y0 + aoi_size;
  write_shp(dir.file("aoi.shp"),
            {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}});

  std::vector<FixtureScene> scenes = {
      {Sensor::Sentinel2, "2017-08-01T09:10:00Z", "S2-0801", 32634},
      {Sensor::Sentinel2, "2017-09-13T09:10:00Z", "S2-0913",
       cross_zone ? 32635 : 32634},
      {Sensor::Landsat8, "2017-10-05T09:05:00Z", "L8-1005", 32634},
  };

  nlohmann::json cfg;
  cfg["aoi"] = {{"shapefile", dir.file("aoi.shp")}, {"epsg", 32634}};
  cfg["target_epsg"] = 32634;
  cfg["target_resolution"] = 10.0;
  cfg["output"] = dir.file("cube.nc");
  cfg["history"] = "fixture build";
  cfg["scenes"] = nlohmann::json::array();

  for (const auto& fs : scenes) {
    double min_x = x0 - 100, min_y = y0 - 100, max_x = x1 + 100, max_y = y1 + 100;
    if (fs.epsg != 32634) {
      // express the coverage box in the scene's own zone
      std::vector<Point> corners = {{min_x, min_y}, {max_x, min_y},
                                    {max_x, max_y}, {min_x, max_y}};
      auto out = transform_points(corners, 32634, fs.epsg);
      min_x = min_y = 1e300;
      max_x = max_y = -1e300;
      for (const Point& p : out) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
      }
    }
    nlohmann::json scene;
    scene["sensor"] = sensor_name(fs.sensor);
    scene["acquired_at"] = fs.stamp;
    scene["id"] = fs.id;
    scene["bands"] = write_scene_files(dir, fs, min_x, min_y, max_x, max_y, rng);
    scene["metadata"] = fs.sensor == Sensor::Sentinel2
                            ? write_sentinel_sidecar(dir, fs.id + "_meta.json")
                            : write_landsat_sidecar(dir, fs.id + "_meta.json");
    cfg["scenes"].push_back(scene);
  }

  BuildFixture fixture;
  fixture.config = cfg;
  fixture.output_path = dir.file("cube.nc");
  fixture.config_path = dir.file("config.json");
  std::string text = cfg.dump(2);
  oceandc::detail::write_file(fixture.config_path,
                              std::vector<std::uint8_t>(text.begin(), text.end()));
  return fixture;
}

}  // namespace testutil

#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "oceandc/detail/bytes.hpp"
#include "oceandc/oceandc.hpp"

namespace testutil {

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() /
                        "oceandc-test-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!::mkdtemp(buf.data())) throw std::runtime_error("mkdtemp failed");
    path_ = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (std::filesystem::path(path_) / name).string();
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline oceandc::GridSpec make_grid(int epsg, double ox, double oy, double ps,
                                   int w, int h) {
  return {epsg, ox, oy, ps, ps, w, h};
}

inline oceandc::Raster2D constant_raster(const oceandc::GridSpec& g, float v) {
  return oceandc::Raster2D(g, v);
}

inline oceandc::Raster2D random_raster(const oceandc::GridSpec& g,
                                       std::mt19937& rng, float lo, float hi,
                                       double fill_fraction = 0.0) {
  std::uniform_real_distribution<float> dist(lo, hi);
  std::uniform_real_distribution<double> fill(0.0, 1.0);
  std::vector<float> values(g.pixel_count());
  for (auto& v : values)
    v = fill(rng) < fill_fraction ? oceandc::kFill : dist(rng);
  return oceandc::Raster2D(g, values);
}

// ESRI shapefile (.shp) main-file bytes for a list of single-ring
// polygons; independent of the reader under test.
inline void write_shp(const std::string& path,
                      const std::vector<std::vector<oceandc::Point>>& rings,
                      int shape_type = 5) {
  using oceandc::detail::ByteWriter;
  ByteWriter content(false);
  std::vector<std::pair<std::size_t, std::size_t>> record_spans;
  for (std::size_t rec = 0; rec < rings.size(); ++rec) {
    const auto& ring = rings[rec];
    ByteWriter body(false);
    body.i32(shape_type);
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const auto& p : ring) {
      minx = std::min(minx, p.x); maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y); maxy = std::max(maxy, p.y);
    }
    body.f64(minx); body.f64(miny); body.f64(maxx); body.f64(maxy);
    body.i32(1);  // one part
    body.i32(static_cast<std::int32_t>(ring.size()));
    body.i32(0);  // part start
    for (const auto& p : ring) { body.f64(p.x); body.f64(p.y); }

    ByteWriter header(true);
    header.i32(static_cast<std::int32_t>(rec + 1));
    header.i32(static_cast<std::int32_t>(body.size() / 2));
    record_spans.push_back({content.size(), body.size()});
    content.bytes(header.buffer().data(), header.buffer().size());
    content.bytes(body.buffer().data(), body.buffer().size());
  }

  ByteWriter file(true);
  file.i32(9994);
  for (int i = 0; i < 5; ++i) file.i32(0);
  file.i32(static_cast<std::int32_t>((100 + content.size()) / 2));
  ByteWriter le(false);
  le.i32(1000);
  le.i32(shape_type);
  for (int i = 0; i < 8; ++i) le.f64(0.0);  // bbox + ranges, readers ignore
  file.bytes(le.buffer().data(), le.buffer().size());
  file.bytes(content.buffer().data(), content.buffer().size());
  oceandc::detail::write_file(path, file.buffer());
}

// Sentinel-2 sidecar metadata
inline std::string write_sentinel_sidecar(const TempDir& dir,
                                          const std::string& name = "meta.json",
                                          double scale = 0.0001,
                                          double offset = 0.0) {
  std::string path = dir.file(name);
  std::string text = "{\"scale\": " + std::to_string(scale) +
                     ", \"offset\": " + std::to_string(offset) + "}";
  std::vector<std::uint8_t> bytes(text.begin(), text.end());
  oceandc::detail::write_file(path, bytes);
  return path;
}

inline std::string write_landsat_sidecar(const TempDir& dir,
                                         const std::string& name = "meta_l8.json") {
  std::string path = dir.file(name);
  std::string text =
      "{\"scale\": 0.0000275, \"offset\": -0.2, \"K1\": 774.8853, "
      "\"K2\": 1321.0789, \"ML\": 0.0003342, \"AL\": 0.1}";
  std::vector<std::uint8_t> bytes(text.begin(), text.end());
  oceandc::detail::write_file(path, bytes);
  return path;
}

inline oceandc::RadiometricParams sentinel_params(double scale = 1.0,
                                                  double offset = 0.0) {
  oceandc::RadiometricParams p;
  p.reflectance_scale = scale;
  p.reflectance_offset = offset;
  return p;
}

inline oceandc::RadiometricParams landsat_params() {
  oceandc::RadiometricParams p;
  p.reflectance_scale = 1.0;
  p.reflectance_offset = 0.0;
  oceandc::ThermalCal cal{774.8853, 1321.0789, 1.0, 0.0};
  p.tirs1 = cal;
  p.tirs2 = cal;
  return p;
}

// A complete synthetic scene on one grid: every native band present, all
// values in a reflectance-like range (thermal DN around radiance ~ 6-10).
inline oceandc::Scene full_scene(oceandc::Sensor sensor,
                                 const oceandc::GridSpec& grid,
                                 std::int64_t time, const std::string& id,
                                 std::mt19937& rng) {
  oceandc::Scene scene;
  scene.sensor = sensor;
  scene.acquired_at = time;
  scene.id = id;
  scene.radiometry = oceandc::is_landsat(sensor)
                         ? landsat_params()
                         : sentinel_params(1.0, 0.0);
  for (const auto& [label, band_id] : oceandc::sensor_band_mapping(sensor)) {
    bool thermal = band_id == oceandc::band::tirs1 ||
                   band_id == oceandc::band::tirs2;
    scene.native_bands.emplace(
        label, thermal ? random_raster(grid, rng, 4.0f, 12.0f)
                       : random_raster(grid, rng, 0.01f, 0.9f));
  }
  return scene;
}

inline std::uint64_t file_size(const std::string& path) {
  return std::filesystem::file_size(path);
}

inline bool files_identical(const std::string& a, const std::string& b) {
  auto da = oceandc::detail::read_file(a);
  auto db = oceandc::detail::read_file(b);
  return da == db;
}

}  // namespace testutil

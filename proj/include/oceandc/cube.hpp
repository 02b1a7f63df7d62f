#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oceandc/bands.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/raster.hpp"

namespace oceandc {

// One harmonized acquisition as a 3D array (band, y, x). The band axis is
// always the full 43-entry catalogue; planes the sensor cannot deliver are
// entirely fill.
struct SceneCube {
  GridSpec grid;
  std::int64_t time = 0;
  Sensor sensor = Sensor::Sentinel2;
  std::string source_id;
  std::vector<float> bands;  // 43 * height * width, band-major

  SceneCube() = default;
  SceneCube(GridSpec g, std::int64_t t, Sensor s, std::string id)
      : grid(g), time(t), sensor(s), source_id(std::move(id)),
        bands(static_cast<std::size_t>(kBandCount) * g.pixel_count(), kFill) {
    grid.validate();
  }

  std::size_t plane_size() const { return grid.pixel_count(); }

  std::span<float> plane(int band_id) {
    return {bands.data() + (band_id - 1) * plane_size(), plane_size()};
  }
  std::span<const float> plane(int band_id) const {
    return {bands.data() + (band_id - 1) * plane_size(), plane_size()};
  }

  Raster2D plane_raster(int band_id) const {
    auto p = plane(band_id);
    return Raster2D(grid, std::vector<float>(p.begin(), p.end()));
  }

  bool plane_all_fill(int band_id) const {
    for (float v : plane(band_id))
      if (!is_fill(v)) return false;
    return true;
  }
};

struct SliceInfo {
  Sensor sensor = Sensor::Sentinel2;
  std::string source_id;

  friend bool operator==(const SliceInfo&, const SliceInfo&) = default;
};

// The 4D data cube (time, band, y, x) with strictly increasing times and
// per-slice provenance.
struct HyperCube {
  GridSpec grid;
  std::vector<std::int64_t> times;
  std::vector<SliceInfo> slices;
  std::vector<float> data;  // times.size() * 43 * height * width

  std::size_t plane_size() const { return grid.pixel_count(); }
  std::size_t slice_size() const { return kBandCount * plane_size(); }

  std::span<float> plane(std::size_t t, int band_id) {
    return {data.data() + t * slice_size() + (band_id - 1) * plane_size(),
            plane_size()};
  }
  std::span<const float> plane(std::size_t t, int band_id) const {
    return {data.data() + t * slice_size() + (band_id - 1) * plane_size(),
            plane_size()};
  }

  Raster2D plane_raster(std::size_t t, int band_id) const {
    auto p = plane(t, band_id);
    return Raster2D(grid, std::vector<float>(p.begin(), p.end()));
  }

  double plane_fill_fraction(std::size_t t, int band_id) const {
    auto p = plane(t, band_id);
    if (p.empty()) return 1.0;
    std::size_t n = 0;
    for (float v : p) n += is_fill(v);
    return static_cast<double>(n) / static_cast<double>(p.size());
  }

  void validate() const {
    grid.validate();
    if (times.size() != slices.size())
      throw Error(Errc::schema_error, "time axis and provenance length differ");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (times[i] <= times[i - 1])
        throw Error(Errc::duplicate_timestamp,
                    "times are not strictly increasing");
    if (data.size() != times.size() * slice_size())
      throw Error(Errc::schema_error, "data buffer does not match shape");
  }
};

}  // namespace oceandc

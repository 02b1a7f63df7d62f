#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "oceandc/errors.hpp"

namespace oceandc {

// Quiet NaN marks pixels with no valid data everywhere in the toolkit.
inline constexpr float kFill = std::numeric_limits<float>::quiet_NaN();

inline bool is_fill(float v) { return std::isnan(v); }

struct Point {
  double x = 0;
  double y = 0;
};

// CRS + affine geotransform + dimensions. origin is the outer corner of
// pixel (0,0); rows advance in -y.
struct GridSpec {
  int epsg = 0;
  double origin_x = 0;
  double origin_y = 0;
  double pixel_size_x = 0;
  double pixel_size_y = 0;
  int width = 0;
  int height = 0;

  void validate() const {
    if (width < 1 || height < 1)
      throw Error(Errc::grid_mismatch, "grid dimensions must be >= 1");
    if (!(pixel_size_x > 0) || !(pixel_size_y > 0))
      throw Error(Errc::grid_mismatch, "pixel sizes must be > 0");
  }

  Point pixel_center(int col, int row) const {
    return {origin_x + (col + 0.5) * pixel_size_x,
            origin_y - (row + 0.5) * pixel_size_y};
  }

  double min_x() const { return origin_x; }
  double max_x() const { return origin_x + width * pixel_size_x; }
  double max_y() const { return origin_y; }
  double min_y() const { return origin_y - height * pixel_size_y; }

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// One spectral band: a row-major float grid plus its georeferencing.
class Raster2D {
 public:
  Raster2D() = default;

  explicit Raster2D(GridSpec grid, float initial = kFill)
      : grid_(grid), values_(grid.pixel_count(), initial) {
    grid_.validate();
  }

  Raster2D(GridSpec grid, std::vector<float> values)
      : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.pixel_count())
      throw Error(Errc::grid_mismatch,
                  "value buffer does not match grid dimensions");
  }

  const GridSpec& grid() const { return grid_; }
  int width() const { return grid_.width; }
  int height() const { return grid_.height; }

  float at(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * grid_.width + col];
  }
  float& at(int row, int col) {
    return values_[static_cast<std::size_t>(row) * grid_.width + col];
  }

  const std::vector<float>& values() const { return values_; }
  std::vector<float>& values() { return values_; }

  std::size_t size() const { return values_.size(); }

  bool all_fill() const {
    for (float v : values_)
      if (!is_fill(v)) return false;
    return true;
  }

  double fill_fraction() const {
    if (values_.empty()) return 1.0;
    std::size_t n = 0;
    for (float v : values_) n += is_fill(v);
    return static_cast<double>(n) / static_cast<double>(values_.size());
  }

 private:
  GridSpec grid_;
  std::vector<float> values_;
};

struct BBox {
  double min_x = 0;
  double min_y = 0;
  double max_x = 0;
  double max_y = 0;
  int epsg = 0;

  void validate() const {
    if (!(min_x < max_x) || !(min_y < max_y))
      throw Error(Errc::empty_geometry, "degenerate bounding box");
  }
};

// Closed ring(s) of (x, y) vertices in a declared CRS. The first ring is
// the outer boundary.
struct Polygon {
  int epsg = 0;
  std::vector<std::vector<Point>> rings;
};

}  // namespace oceandc

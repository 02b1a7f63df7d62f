#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oceandc/errors.hpp"
#include "oceandc/geodesy.hpp"
#include "oceandc/raster.hpp"
#include "oceandc/scene.hpp"

// Spatial pipeline: every band of every scene ends up on one shared target
// grid via reproject -> clip -> pseudo-resolution resample. All steps are
// nearest-neighbor; no new information is introduced.

namespace oceandc {

inline BBox compute_clip_box(std::span<const Polygon> polygons) {
  if (polygons.empty())
    throw Error(Errc::empty_geometry, "no polygons given");
  BBox box;
  box.min_x = box.min_y = std::numeric_limits<double>::infinity();
  box.max_x = box.max_y = -std::numeric_limits<double>::infinity();
  box.epsg = polygons.front().epsg;
  std::size_t vertices = 0;
  for (const Polygon& poly : polygons) {
    for (const auto& ring : poly.rings) {
      for (const Point& p : ring) {
        box.min_x = std::min(box.min_x, p.x);
        box.max_x = std::max(box.max_x, p.x);
        box.min_y = std::min(box.min_y, p.y);
        box.max_y = std::max(box.max_y, p.y);
        ++vertices;
      }
    }
  }
  if (vertices < 3 || !(box.min_x < box.max_x) || !(box.min_y < box.max_y))
    throw Error(Errc::empty_geometry, "degenerate geometry yields a zero-area box");
  return box;
}

struct ReprojectResult {
  Raster2D raster;
  bool all_fill = false;  // no destination pixel hit the source extent
};

namespace detail {

// Destination pixel centers expressed in the source CRS.
inline std::vector<Point> dst_centers_in_src_crs(const GridSpec& dst,
                                                 int src_epsg) {
  CrsTransform to_src(dst.epsg, src_epsg);
  std::vector<Point> pts;
  pts.reserve(dst.pixel_count());
  for (int row = 0; row < dst.height; ++row)
    for (int col = 0; col < dst.width; ++col)
      pts.push_back(to_src(dst.pixel_center(col, row)));
  return pts;
}

// Nearest-neighbor lookup with half-open pixels: an exact boundary
// coordinate belongs to the pixel with the larger index.
inline ReprojectResult reproject_mapped(const Raster2D& src,
                                        const GridSpec& dst,
                                        std::span<const Point> src_points) {
  const GridSpec& sg = src.grid();
  Raster2D out(dst);
  bool any_hit = false;
  std::size_t i = 0;
  for (int row = 0; row < dst.height; ++row) {
    for (int col = 0; col < dst.width; ++col, ++i) {
      const Point& p = src_points[i];
      double fx = (p.x - sg.origin_x) / sg.pixel_size_x;
      double fy = (sg.origin_y - p.y) / sg.pixel_size_y;
      int sc = static_cast<int>(std::floor(fx));
      int sr = static_cast<int>(std::floor(fy));
      if (sc >= 0 && sc < sg.width && sr >= 0 && sr < sg.height) {
        out.at(row, col) = src.at(sr, sc);
        any_hit = true;
      }
    }
  }
  return {std::move(out), !any_hit};
}

}  // namespace detail

inline ReprojectResult reproject_raster(const Raster2D& src,
                                        const GridSpec& dst_grid) {
  dst_grid.validate();
  if (src.grid() == dst_grid) return {src, false};
  auto pts = detail::dst_centers_in_src_crs(dst_grid, src.grid().epsg);
  return detail::reproject_mapped(src, dst_grid, pts);
}

// Smallest pixel-aligned rectangle of the source grid containing bbox,
// snapped outward so AOI coverage is never truncated.
inline Raster2D clip_raster(const Raster2D& src, const BBox& bbox) {
  bbox.validate();
  const GridSpec& g = src.grid();
  if (bbox.epsg != g.epsg)
    throw Error(Errc::grid_mismatch, "clip box CRS EPSG:" +
                                         std::to_string(bbox.epsg) +
                                         " differs from raster EPSG:" +
                                         std::to_string(g.epsg));
  constexpr double eps = 1e-9;  // grid-unit guard for exact boundaries
  double fx0 = (bbox.min_x - g.origin_x) / g.pixel_size_x;
  double fx1 = (bbox.max_x - g.origin_x) / g.pixel_size_x;
  double fy0 = (g.origin_y - bbox.max_y) / g.pixel_size_y;
  double fy1 = (g.origin_y - bbox.min_y) / g.pixel_size_y;
  int col0 = std::max(0, static_cast<int>(std::floor(fx0 + eps)));
  int col1 = std::min(g.width, static_cast<int>(std::ceil(fx1 - eps)));
  int row0 = std::max(0, static_cast<int>(std::floor(fy0 + eps)));
  int row1 = std::min(g.height, static_cast<int>(std::ceil(fy1 - eps)));
  if (col0 >= col1 || row0 >= row1)
    throw Error(Errc::empty_intersection,
                "clip box does not intersect the raster extent");

  GridSpec out_grid = g;
  out_grid.origin_x = g.origin_x + col0 * g.pixel_size_x;
  out_grid.origin_y = g.origin_y - row0 * g.pixel_size_y;
  out_grid.width = col1 - col0;
  out_grid.height = row1 - row0;
  Raster2D out(out_grid);
  for (int row = row0; row < row1; ++row)
    for (int col = col0; col < col1; ++col)
      out.at(row - row0, col - col0) = src.at(row, col);
  return out;
}

namespace detail {

inline int integer_ratio(double pixel_size, double target_res,
                         const char* axis) {
  double ratio = pixel_size / target_res;
  int k = static_cast<int>(std::lround(ratio));
  if (k < 1 || std::fabs(ratio - k) > 1e-9 * std::fabs(ratio))
    throw Error(Errc::non_integer_ratio,
                std::string("pixel size / target resolution on ") + axis +
                    " is " + std::to_string(ratio) +
                    ", expected an integer >= 1");
  return k;
}

}  // namespace detail

// Splits each source pixel into a k x k block of the same value
// ("pseudo-resolution"). k = 1 is the identity.
inline Raster2D resample_nn(const Raster2D& src, double target_res) {
  if (!(target_res > 0))
    throw Error(Errc::non_integer_ratio, "target resolution must be > 0");
  const GridSpec& g = src.grid();
  int kx = detail::integer_ratio(g.pixel_size_x, target_res, "x");
  int ky = detail::integer_ratio(g.pixel_size_y, target_res, "y");
  if (kx == 1 && ky == 1 && g.pixel_size_x == target_res &&
      g.pixel_size_y == target_res)
    return src;

  GridSpec out_grid = g;
  out_grid.pixel_size_x = target_res;
  out_grid.pixel_size_y = target_res;
  out_grid.width = g.width * kx;
  out_grid.height = g.height * ky;
  Raster2D out(out_grid);
  for (int row = 0; row < g.height; ++row) {
    for (int col = 0; col < g.width; ++col) {
      float v = src.at(row, col);
      for (int dy = 0; dy < ky; ++dy) {
        float* dst = &out.at(row * ky + dy, col * kx);
        for (int dx = 0; dx < kx; ++dx) dst[dx] = v;
      }
    }
  }
  return out;
}

// Brings every native band of a scene onto the target grid. Each band is
// reprojected at its own coarse multiple of the target resolution (so the
// clip to the target extent happens on the band's pseudo-native grid) and
// then block-expanded to the target resolution. The result of this fused
// form is pixel-identical to reproject -> clip -> resample applied in
// sequence, because every step decides each destination pixel
// independently.
inline Scene harmonize_scene(const Scene& scene, const GridSpec& target) {
  target.validate();
  if (target.pixel_size_x != target.pixel_size_y)
    throw Error(Errc::grid_mismatch, "target grid must have square pixels");

  Scene out;
  out.sensor = scene.sensor;
  out.acquired_at = scene.acquired_at;
  out.id = scene.id;
  out.radiometry = scene.radiometry;

  const bool target_projected = epsg_lookup(target.epsg).projected();
  std::map<std::pair<int, std::pair<int, int>>, std::vector<Point>> center_cache;

  for (const auto& [label, band] : scene.native_bands) {
    try {
      int kx = 1, ky = 1;
      // The pixel-size ratio is only meaningful when source and target
      // share linear units; a geographic<->projected pair reprojects
      // directly at the target resolution.
      if (epsg_lookup(band.grid().epsg).projected() == target_projected) {
        kx = detail::integer_ratio(band.grid().pixel_size_x, target.pixel_size_x, "x");
        ky = detail::integer_ratio(band.grid().pixel_size_y, target.pixel_size_y, "y");
      }
      if (target.width % kx != 0 || target.height % ky != 0)
        throw Error(Errc::grid_mismatch,
                    "target dimensions are not divisible by the resolution ratio " +
                        std::to_string(kx) + "x" + std::to_string(ky));

      GridSpec coarse = target;
      coarse.pixel_size_x = target.pixel_size_x * kx;
      coarse.pixel_size_y = target.pixel_size_y * ky;
      coarse.width = target.width / kx;
      coarse.height = target.height / ky;

      ReprojectResult rep;
      if (band.grid() == coarse) {
        rep = {band, false};
      } else {
        auto key = std::make_pair(band.grid().epsg, std::make_pair(kx, ky));
        auto it = center_cache.find(key);
        if (it == center_cache.end())
          it = center_cache.emplace(key, detail::dst_centers_in_src_crs(coarse, band.grid().epsg)).first;
        rep = detail::reproject_mapped(band, coarse, it->second);
      }
      if (rep.all_fill)
        throw Error(Errc::empty_intersection,
                    "band does not intersect the target grid");

      out.native_bands.emplace(label, resample_nn(rep.raster, target.pixel_size_x));
    } catch (const Error& e) {
      throw Error(e.code(), "scene '" + scene.id + "' band '" + label +
                                "': " + e.message());
    }
  }
  return out;
}

}  // namespace oceandc

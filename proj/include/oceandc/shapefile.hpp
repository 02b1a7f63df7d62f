#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oceandc/detail/bytes.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/raster.hpp"

// ESRI Shapefile main-file (.shp) reader for shape type 5 (Polygon).
// The header is big-endian except for version/shape-type; record contents
// are little-endian. The CRS is supplied out-of-band (the .prj sidecar is
// not parsed).

namespace oceandc {

inline std::vector<Polygon> read_shapefile_polygons(const std::string& path,
                                                    int epsg) {
  auto file = detail::read_file(path);
  detail::ByteReader be(file.data(), file.size(), true);
  detail::ByteReader le(file.data(), file.size(), false);

  if (file.size() < 100)
    throw Error(Errc::parse_error, "shapefile header truncated");
  if (be.i32(0) != 9994)
    throw Error(Errc::parse_error, "bad shapefile file code (expected 9994)");
  if (le.i32(28) != 1000)
    throw Error(Errc::parse_error, "unsupported shapefile version");
  std::int32_t shape_type = le.i32(32);
  if (shape_type != 5)
    throw Error(Errc::unsupported_shape_type,
                "shape type " + std::to_string(shape_type) +
                    " (only 5, Polygon, is supported)");

  std::vector<Polygon> polygons;
  std::uint64_t off = 100;
  while (off + 8 <= file.size()) {
    std::int32_t content_words = be.i32(off + 4);
    if (content_words < 2)
      throw Error(Errc::parse_error,
                  "bad record length at offset " + std::to_string(off));
    std::uint64_t content = off + 8;
    std::uint64_t content_len = static_cast<std::uint64_t>(content_words) * 2;
    be.require(content, content_len);

    std::int32_t rec_type = le.i32(content);
    if (rec_type == 0) {  // null shape
      off = content + content_len;
      continue;
    }
    if (rec_type != 5)
      throw Error(Errc::unsupported_shape_type,
                  "record shape type " + std::to_string(rec_type) +
                      " at offset " + std::to_string(content));

    std::int32_t num_parts = le.i32(content + 36);
    std::int32_t num_points = le.i32(content + 40);
    if (num_parts < 1 || num_points < 1)
      throw Error(Errc::parse_error,
                  "empty polygon record at offset " + std::to_string(content));
    std::uint64_t parts_off = content + 44;
    std::uint64_t points_off = parts_off + 4ull * num_parts;
    le.require(points_off, 16ull * num_points);

    std::vector<std::int32_t> parts(num_parts);
    for (std::int32_t i = 0; i < num_parts; ++i)
      parts[i] = le.i32(parts_off + 4ull * i);

    Polygon poly;
    poly.epsg = epsg;
    for (std::int32_t p = 0; p < num_parts; ++p) {
      std::int32_t start = parts[p];
      std::int32_t end = p + 1 < num_parts ? parts[p + 1] : num_points;
      if (start < 0 || end > num_points || start >= end)
        throw Error(Errc::parse_error,
                    "bad part index at offset " + std::to_string(parts_off));
      std::vector<Point> ring;
      ring.reserve(end - start);
      for (std::int32_t i = start; i < end; ++i) {
        ring.push_back({le.f64(points_off + 16ull * i),
                        le.f64(points_off + 16ull * i + 8)});
      }
      poly.rings.push_back(std::move(ring));
    }
    polygons.push_back(std::move(poly));
    off = content + content_len;
  }
  return polygons;
}

}  // namespace oceandc

#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "oceandc/cube.hpp"
#include "oceandc/indices.hpp"
#include "oceandc/scene.hpp"
#include "oceandc/timeutil.hpp"

namespace oceandc {

namespace detail {

inline bool product_selected(std::span<const int> products, int id) {
  return products.empty() ||
         std::find(products.begin(), products.end(), id) != products.end();
}

}  // namespace detail

// Builds the 43-plane cube for one harmonized scene. Planes 1-16 hold
// reflectance (thermal planes 15-16 hold brightness temperature in
// Kelvin); planes 17-43 are computed in id order so chained products see
// their inputs. Planes the sensor cannot deliver stay fill, as does VCI,
// which needs the time axis. An empty `products` list selects everything.
inline SceneCube assemble_scene(const Scene& scene,
                                std::span<const int> products = {}) {
  if (scene.native_bands.empty())
    throw Error(Errc::missing_input,
                "scene '" + scene.id + "' has no native bands");
  validate_native_labels(scene.sensor, scene.native_bands);
  scene.radiometry.validate(scene.sensor);

  const GridSpec& grid = scene.native_bands.begin()->second.grid();
  for (const auto& [label, raster] : scene.native_bands)
    if (!(raster.grid() == grid))
      throw Error(Errc::grid_mismatch,
                  "scene '" + scene.id + "' band '" + label +
                      "' is not on the shared grid (harmonize first)");

  SceneCube cube(grid, scene.acquired_at, scene.sensor, scene.id);

  for (const auto& [label, raster] : scene.native_bands) {
    int id = native_band_for(scene.sensor, label);
    Raster2D plane =
        (id == band::tirs1 || id == band::tirs2)
            ? brightness_temperature(raster, scene.radiometry, id)
            : scale_to_reflectance(raster, scene.radiometry);
    std::copy(plane.values().begin(), plane.values().end(),
              cube.plane(id).begin());
  }

  for (int id = kFirstComputedBand; id <= kBandCount; ++id) {
    if (id == band::vci) continue;
    if (!detail::product_selected(products, id)) continue;
    if (!product_available(scene.sensor, id)) continue;
    detail::compute_index_into(cube, id, cube.plane(id));
  }
  return cube;
}

// Stacks scene cubes along the time axis (sorted ascending) and recomputes
// the VCI plane across it, the only cross-time product.
inline HyperCube stack(std::span<const SceneCube> cubes,
                       bool compute_vci = true) {
  if (cubes.empty())
    throw Error(Errc::missing_input, "no scene cubes to stack");
  const GridSpec& grid = cubes.front().grid;
  for (const SceneCube& c : cubes)
    if (!(c.grid == grid))
      throw Error(Errc::grid_mismatch,
                  "scene '" + c.source_id + "' is not on the shared grid");

  std::vector<std::size_t> order(cubes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cubes[a].time < cubes[b].time;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (cubes[order[i]].time == cubes[order[i - 1]].time)
      throw Error(Errc::duplicate_timestamp,
                  "scenes '" + cubes[order[i - 1]].source_id + "' and '" +
                      cubes[order[i]].source_id + "' share timestamp " +
                      format_iso8601_utc(cubes[order[i]].time));
  }

  HyperCube out;
  out.grid = grid;
  out.data.resize(cubes.size() * static_cast<std::size_t>(kBandCount) *
                  grid.pixel_count());
  for (std::size_t t = 0; t < order.size(); ++t) {
    const SceneCube& c = cubes[order[t]];
    out.times.push_back(c.time);
    out.slices.push_back({c.sensor, c.source_id});
    std::copy(c.bands.begin(), c.bands.end(),
              out.data.begin() + static_cast<std::ptrdiff_t>(t * out.slice_size()));
  }

  if (compute_vci && out.times.size() >= 2) {
    std::vector<std::span<const float>> ndvi;
    ndvi.reserve(out.times.size());
    for (std::size_t t = 0; t < out.times.size(); ++t)
      ndvi.push_back(out.plane(t, band::ndvi));
    auto planes = detail::vci_planes(ndvi, grid.pixel_count());
    for (std::size_t t = 0; t < planes.size(); ++t)
      std::copy(planes[t].begin(), planes[t].end(),
                out.plane(t, band::vci).begin());
  }

  out.validate();
  return out;
}

}  // namespace oceandc

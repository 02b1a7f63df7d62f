#pragma once

#include <atomic>
#include <cmath>
#include <ctime>
#include <iostream>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

#include "oceandc/assemble.hpp"
#include "oceandc/classify.hpp"
#include "oceandc/config.hpp"
#include "oceandc/geotiff.hpp"
#include "oceandc/harmonize.hpp"
#include "oceandc/metadata.hpp"
#include "oceandc/netcdf.hpp"
#include "oceandc/shapefile.hpp"

// End-to-end build: read -> harmonize -> assemble -> stack -> write.
// Scene-level work runs in parallel; stacking and output are single
// threaded. Identical config + inputs give byte-identical output when the
// history attribute is pinned.

namespace oceandc {

struct BuildSummary {
  GridSpec grid;
  std::string output;
  struct Slice {
    std::string id;
    Sensor sensor = Sensor::Sentinel2;
    std::int64_t time = 0;
    double fill_fraction = 0;
  };
  std::vector<Slice> slices;
};

namespace detail {

[[noreturn]] inline void rethrow_with_stage(const Error& e,
                                            const std::string& stage,
                                            const std::string& scene) {
  std::string ctx = "stage=" + stage;
  if (!scene.empty()) ctx += " scene='" + scene + "'";
  throw Error(e.code(), ctx + ": " + e.message());
}

inline Scene load_scene(const SceneConfig& sc) {
  Scene scene;
  scene.sensor = sc.sensor;
  scene.acquired_at = sc.acquired_at;
  scene.id = sc.id;
  scene.radiometry = read_metadata(sc.metadata_path, sc.sensor);
  for (const auto& [label, path] : sc.band_paths) {
    try {
      scene.native_bands.emplace(label, read_geotiff(path));
    } catch (const Error& e) {
      throw Error(e.code(), "band '" + label + "' (" + path + "): " + e.message());
    }
  }
  return scene;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; the first error in
// index order wins.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  int workers = std::max(1, jobs);
  workers = static_cast<int>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// AOI box in the target CRS, snapped outward to an absolute grid whose
// cell is `resolution * alignment`, so every coarse band grid divides the
// target grid exactly.
inline GridSpec target_grid_for(const BBox& box, int epsg, double resolution,
                                int alignment) {
  constexpr double eps = 1e-9;
  const double cell = resolution * alignment;
  GridSpec g;
  g.epsg = epsg;
  g.pixel_size_x = resolution;
  g.pixel_size_y = resolution;
  g.origin_x = std::floor(box.min_x / cell + eps) * cell;
  g.origin_y = std::ceil(box.max_y / cell - eps) * cell;
  g.width = alignment *
            static_cast<int>(std::ceil((box.max_x - g.origin_x) / cell - eps));
  g.height = alignment *
             static_cast<int>(std::ceil((g.origin_y - box.min_y) / cell - eps));
  g.validate();
  return g;
}

}  // namespace detail

inline HyperCube build_cube(const BuildConfig& cfg, int jobs,
                            std::ostream& log = std::cerr) {
  // area of interest
  std::vector<Polygon> polygons;
  try {
    polygons = read_shapefile_polygons(cfg.aoi_shapefile, cfg.aoi_epsg);
  } catch (const Error& e) {
    detail::rethrow_with_stage(e, "aoi", "");
  }
  std::vector<Polygon> projected;
  BBox box;
  try {
    CrsTransform to_target(cfg.aoi_epsg, cfg.target_epsg);
    for (const Polygon& poly : polygons) {
      Polygon p{cfg.target_epsg, {}};
      for (const auto& ring : poly.rings) {
        std::vector<Point> out;
        out.reserve(ring.size());
        for (const Point& v : ring) out.push_back(to_target(v));
        p.rings.push_back(std::move(out));
      }
      projected.push_back(std::move(p));
    }
    box = compute_clip_box(projected);
  } catch (const Error& e) {
    detail::rethrow_with_stage(e, "clip-box", "");
  }

  // load everything first: the grid alignment depends on every band's
  // resolution ratio
  std::vector<Scene> scenes(cfg.scenes.size());
  detail::parallel_for(cfg.scenes.size(), jobs, [&](std::size_t i) {
    try {
      scenes[i] = detail::load_scene(cfg.scenes[i]);
    } catch (const Error& e) {
      detail::rethrow_with_stage(e, "load", cfg.scenes[i].id);
    }
  });

  const bool target_projected = epsg_lookup(cfg.target_epsg).projected();
  int alignment = 1;
  for (const Scene& scene : scenes) {
    for (const auto& [label, band] : scene.native_bands) {
      try {
        if (epsg_lookup(band.grid().epsg).projected() != target_projected)
          continue;
        int kx = detail::integer_ratio(band.grid().pixel_size_x,
                                       cfg.target_resolution, "x");
        int ky = detail::integer_ratio(band.grid().pixel_size_y,
                                       cfg.target_resolution, "y");
        alignment = std::lcm(alignment, std::lcm(kx, ky));
      } catch (const Error& e) {
        detail::rethrow_with_stage(e, "grid", scene.id + "' band '" + label);
      }
    }
  }

  GridSpec target =
      detail::target_grid_for(box, cfg.target_epsg, cfg.target_resolution, alignment);
  log << "[grid] " << target.width << "x" << target.height << " @ "
      << cfg.target_resolution << " EPSG:" << cfg.target_epsg << "\n";

  std::vector<SceneCube> cubes(scenes.size());
  detail::parallel_for(scenes.size(), jobs, [&](std::size_t i) {
    Scene harmonized;
    try {
      harmonized = harmonize_scene(scenes[i], target);
    } catch (const Error& e) {
      detail::rethrow_with_stage(e, "harmonize", "");
    }
    try {
      cubes[i] = assemble_scene(harmonized, cfg.products);
    } catch (const Error& e) {
      detail::rethrow_with_stage(e, "assemble", scenes[i].id);
    }
  });

  bool want_vci = detail::product_selected(cfg.products, band::vci);
  try {
    return stack(cubes, want_vci);
  } catch (const Error& e) {
    detail::rethrow_with_stage(e, "stack", "");
  }
}

inline BuildSummary run_build(const BuildConfig& cfg, int jobs,
                              std::ostream& log = std::cerr) {
  HyperCube cube = build_cube(cfg, jobs, log);

  NetcdfWriteOptions opt;
  opt.history = cfg.history.value_or(format_iso8601_utc(std::time(nullptr)) +
                                     " oceandc build");
  try {
    write_netcdf(cube, cfg.output, opt);
  } catch (const Error& e) {
    detail::rethrow_with_stage(e, "write", "");
  }
  log << "[write] " << cfg.output << " (" << cube.times.size() << " slices)\n";

  for (const ClassificationRequest& req : cfg.classifications) {
    try {
      int id = band_id_of(req.index);
      if (req.time >= static_cast<int>(cube.times.size()))
        throw Error(Errc::config_error,
                    "time index " + std::to_string(req.time) +
                        " out of range for " + std::to_string(cube.times.size()) +
                        " slices");
      ClassScheme scheme = scheme_for(id, cube.slices[req.time].sensor);
      Raster2D plane = cube.plane_raster(req.time, id);
      write_geotiff(classify(plane, id, scheme), req.output);
      log << "[classify] " << req.index << " t=" << req.time << " -> "
          << req.output << "\n";
    } catch (const Error& e) {
      detail::rethrow_with_stage(e, "classify", "");
    }
  }

  BuildSummary summary;
  summary.grid = cube.grid;
  summary.output = cfg.output;
  for (std::size_t t = 0; t < cube.times.size(); ++t) {
    std::size_t fill = 0;
    auto slice = std::span<const float>(cube.data).subspan(
        t * cube.slice_size(), cube.slice_size());
    for (float v : slice) fill += is_fill(v);
    summary.slices.push_back({cube.slices[t].source_id, cube.slices[t].sensor,
                              cube.times[t],
                              static_cast<double>(fill) /
                                  static_cast<double>(slice.size())});
  }
  return summary;
}

}  // namespace oceandc

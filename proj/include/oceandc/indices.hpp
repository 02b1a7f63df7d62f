#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oceandc/bands.hpp"
#include "oceandc/cube.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/raster.hpp"
#include "oceandc/scene.hpp"

// Computed products 17-43. Raster math is total: a fill input, a zero
// denominator, a negative radicand or any non-finite result yields fill,
// never an exception. All per-pixel arithmetic is 32-bit.

namespace oceandc {

struct IndexDefinition {
  int band_id = 0;
  std::vector<int> inputs;  // catalogue ids, order matches the kernel
  std::optional<std::pair<float, float>> valid_range;
};

inline const IndexDefinition& index_definition(int id) {
  static const std::pair<float, float> unit{-1.0f, 1.0f};
  using band_list = std::vector<int>;
  namespace b = band;
  static const std::vector<IndexDefinition> defs = {
      {b::ndvi, band_list{b::nir, b::red}, unit},
      {b::ndwi, band_list{b::nir, b::swir1}, unit},
      {b::ndvi_vre1, band_list{b::vre1, b::red}, unit},
      {b::ndvi_vre2, band_list{b::vre2, b::red}, unit},
      {b::ndvi_vre3, band_list{b::vre3, b::red}, unit},
      {b::ndvi_vre4, band_list{b::vre4, b::red}, unit},
      {b::lswi1, band_list{b::nir, b::swir1}, unit},
      {b::lswi2, band_list{b::nir, b::swir2}, unit},
      {b::arvi, band_list{b::nir, b::red, b::blue}, std::nullopt},
      {b::msavi2, band_list{b::nir, b::red}, std::nullopt},
      {b::mtvi2, band_list{b::nir, b::green, b::red}, std::nullopt},
      {b::vari, band_list{b::green, b::red, b::blue}, std::nullopt},
      {b::tgi, band_list{b::green, b::red, b::blue}, std::nullopt},
      {b::lst1, band_list{b::tirs1, b::ndvi}, std::nullopt},
      {b::lst2, band_list{b::tirs2, b::ndvi}, std::nullopt},
      {b::lst_celsius, band_list{b::lst1}, std::nullopt},
      {b::lst_fahrenheit, band_list{b::lst1}, std::nullopt},
      {b::vci, band_list{b::ndvi}, std::pair<float, float>{0.0f, 100.0f}},
      {b::mndwi1, band_list{b::green, b::swir1}, unit},
      {b::mndwi2, band_list{b::green, b::swir2}, unit},
      {b::wri1, band_list{b::green, b::red, b::nir, b::swir1}, std::nullopt},
      {b::wri2, band_list{b::green, b::red, b::nir, b::swir2}, std::nullopt},
      {b::ndti, band_list{b::red, b::green}, unit},
      {b::awei, band_list{b::green, b::swir1, b::nir, b::swir2}, std::nullopt},
      {b::osi, band_list{b::red, b::green, b::blue}, std::nullopt},
      {b::nbr1, band_list{b::nir, b::swir2}, unit},
      {b::nbr2, band_list{b::swir1, b::swir2}, unit},
  };
  if (!is_computed_band(id))
    throw Error(Errc::unknown_band,
                "band " + std::to_string(id) + " is not a computed product");
  return defs[static_cast<std::size_t>(id - kFirstComputedBand)];
}

// True when the sensor delivers every band the product transitively needs.
inline bool product_available(Sensor sensor, int id) {
  if (is_sensor_band(id)) return sensor_provides(sensor, id);
  for (int in : index_definition(id).inputs)
    if (!product_available(sensor, in)) return false;
  return true;
}

namespace kernels {

inline float normalized_difference(float a, float b) {
  return (a - b) / (a + b);
}

inline float arvi(float nir, float red, float blue) {
  float rb = 2.0f * red - blue;
  return (nir - rb) / (nir + rb);
}

inline float msavi2(float nir, float red) {
  float t = 2.0f * nir + 1.0f;
  return (t - std::sqrt(t * t - 8.0f * (nir - red))) / 2.0f;
}

inline float mtvi2(float nir, float green, float red) {
  float t = 2.0f * nir + 1.0f;
  return 1.5f * (1.2f * (nir - green) - 2.5f * (red - green)) /
         std::sqrt(t * t - (6.0f * nir - 5.0f * std::sqrt(red)) - 0.5f);
}

inline float vari(float green, float red, float blue) {
  return (green - red) / (green + red - blue);
}

inline float tgi(float green, float red, float blue) {
  return green - 0.39f * red - 0.61f * blue;
}

inline float wri1(float green, float red, float nir, float swir1) {
  return (green + red) / (nir + swir1);
}

inline float wri2(float green, float red, float nir, float swir2) {
  return (green - red) / (nir + swir2);
}

inline float awei(float green, float swir1, float nir, float swir2) {
  return 4.0f * (green - swir1) - (0.25f * nir + 2.75f * swir2);
}

inline float osi(float red, float green, float blue) {
  return (red + green) / blue;
}

// NDVI-thresholded surface emissivity (water / soil / mixed / vegetation).
inline float emissivity_from_ndvi(float ndvi) {
  if (ndvi < 0.0f) return 0.991f;
  if (ndvi < 0.2f) return 0.966f;
  if (ndvi <= 0.5f) return 0.973f;
  return 0.993f;
}

// Emissivity-corrected surface temperature from brightness temperature,
// lambda in micrometers, rho = h*c/k = 14388 um*K.
inline float lst(float bt_kelvin, float emissivity, float wavelength_um) {
  return bt_kelvin /
         (1.0f + (wavelength_um * bt_kelvin / 14388.0f) * std::log(emissivity));
}

inline constexpr float kTirs1WavelengthUm = 10.895f;
inline constexpr float kTirs2WavelengthUm = 12.005f;

}  // namespace kernels

// value*scale + offset; results outside [-0.2, 1.6] become fill.
inline Raster2D scale_to_reflectance(const Raster2D& raster,
                                     const RadiometricParams& params) {
  Raster2D out(raster.grid());
  const auto& in = raster.values();
  auto& dst = out.values();
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (is_fill(in[i])) continue;
    double r = in[i] * params.reflectance_scale + params.reflectance_offset;
    if (r >= -0.2 && r <= 1.6) dst[i] = static_cast<float>(r);
  }
  return out;
}

// Top-of-atmosphere brightness temperature: L = ML*DN + AL,
// T = K2 / ln(K1/L + 1). Non-positive radiance becomes fill.
inline Raster2D brightness_temperature(const Raster2D& dn,
                                       const ThermalCal& cal) {
  Raster2D out(dn.grid());
  const auto& in = dn.values();
  auto& dst = out.values();
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (is_fill(in[i])) continue;
    double radiance = cal.radiance_scale * in[i] + cal.radiance_offset;
    if (radiance <= 0) continue;
    dst[i] = static_cast<float>(cal.k2 / std::log(cal.k1 / radiance + 1.0));
  }
  return out;
}

inline Raster2D brightness_temperature(const Raster2D& dn,
                                       const RadiometricParams& params,
                                       int tirs_band) {
  const auto& cal = tirs_band == band::tirs2 ? params.tirs2 : params.tirs1;
  if (!cal)
    throw Error(Errc::missing_input,
                "no thermal calibration for band " + band_name(tirs_band));
  return brightness_temperature(dn, *cal);
}

namespace detail {

template <typename Kernel>
void evaluate_planes(std::span<const std::span<const float>> inputs,
                     std::optional<std::pair<float, float>> valid_range,
                     std::span<float> out, Kernel kernel) {
  const std::size_t n = out.size();
  const std::size_t nin = inputs.size();
  for (std::size_t i = 0; i < n; ++i) {
    float args[4] = {};
    bool fill = false;
    for (std::size_t k = 0; k < nin; ++k) {
      args[k] = inputs[k][i];
      fill = fill || is_fill(args[k]);
    }
    if (fill) {
      out[i] = kFill;
      continue;
    }
    float v = kernel(args);
    if (!std::isfinite(v)) {
      out[i] = kFill;
      continue;
    }
    if (valid_range) {
      if (v < valid_range->first) v = valid_range->first;
      if (v > valid_range->second) v = valid_range->second;
    }
    out[i] = v;
  }
}

inline void compute_index_into(const SceneCube& cube, int id,
                               std::span<float> out) {
  const IndexDefinition& def = index_definition(id);
  std::vector<std::span<const float>> in;
  in.reserve(def.inputs.size());
  for (int b : def.inputs) in.push_back(cube.plane(b));

  auto run = [&](auto kernel) {
    evaluate_planes(in, def.valid_range, out, kernel);
  };
  namespace k = kernels;
  switch (id) {
    case band::ndvi:
    case band::ndwi:
    case band::ndvi_vre1:
    case band::ndvi_vre2:
    case band::ndvi_vre3:
    case band::ndvi_vre4:
    case band::lswi1:
    case band::lswi2:
    case band::mndwi1:
    case band::mndwi2:
    case band::ndti:
    case band::nbr1:
    case band::nbr2:
      run([](const float* a) { return k::normalized_difference(a[0], a[1]); });
      break;
    case band::arvi:
      run([](const float* a) { return k::arvi(a[0], a[1], a[2]); });
      break;
    case band::msavi2:
      run([](const float* a) { return k::msavi2(a[0], a[1]); });
      break;
    case band::mtvi2:
      run([](const float* a) { return k::mtvi2(a[0], a[1], a[2]); });
      break;
    case band::vari:
      run([](const float* a) { return k::vari(a[0], a[1], a[2]); });
      break;
    case band::tgi:
      run([](const float* a) { return k::tgi(a[0], a[1], a[2]); });
      break;
    case band::lst1:
      run([](const float* a) {
        return k::lst(a[0], k::emissivity_from_ndvi(a[1]), k::kTirs1WavelengthUm);
      });
      break;
    case band::lst2:
      run([](const float* a) {
        return k::lst(a[0], k::emissivity_from_ndvi(a[1]), k::kTirs2WavelengthUm);
      });
      break;
    case band::lst_celsius:
      run([](const float* a) { return a[0] - 273.15f; });
      break;
    case band::lst_fahrenheit:
      run([](const float* a) { return a[0] * (9.0f / 5.0f) - 459.67f; });
      break;
    case band::wri1:
      run([](const float* a) { return k::wri1(a[0], a[1], a[2], a[3]); });
      break;
    case band::wri2:
      run([](const float* a) { return k::wri2(a[0], a[1], a[2], a[3]); });
      break;
    case band::awei:
      run([](const float* a) { return k::awei(a[0], a[1], a[2], a[3]); });
      break;
    case band::osi:
      run([](const float* a) { return k::osi(a[0], a[1], a[2]); });
      break;
    default:
      throw Error(Errc::unknown_band,
                  "no per-scene recipe for band " + std::to_string(id));
  }
}

}  // namespace detail

inline Raster2D compute_index(const SceneCube& cube, int id) {
  if (!is_computed_band(id))
    throw Error(Errc::unknown_band,
                "band " + std::to_string(id) + " is not a computed product");
  if (id == band::vci)
    throw Error(Errc::insufficient_history,
                "VCI is computed across the time axis, not per scene");
  for (int in : index_definition(id).inputs) {
    if (cube.plane_all_fill(in))
      throw Error(Errc::missing_input,
                  "input band '" + band_name(in) + "' is entirely fill for " +
                      sensor_name(cube.sensor));
  }
  Raster2D out(cube.grid);
  detail::compute_index_into(cube, id, out.values());
  return out;
}

namespace detail {

// Per-pixel VCI over a time-ordered stack of NDVI planes. A pixel needs at
// least two non-fill samples and a nonzero range; the output at step t is
// fill wherever the input at step t is fill.
inline std::vector<std::vector<float>> vci_planes(
    std::span<const std::span<const float>> ndvi, std::size_t n) {
  const std::size_t steps = ndvi.size();
  std::vector<std::vector<float>> out(steps, std::vector<float>(n, kFill));
  for (std::size_t i = 0; i < n; ++i) {
    float mn = std::numeric_limits<float>::infinity();
    float mx = -std::numeric_limits<float>::infinity();
    std::size_t valid = 0;
    for (std::size_t t = 0; t < steps; ++t) {
      float v = ndvi[t][i];
      if (is_fill(v)) continue;
      mn = std::min(mn, v);
      mx = std::max(mx, v);
      ++valid;
    }
    if (valid < 2 || !(mx > mn)) continue;
    for (std::size_t t = 0; t < steps; ++t) {
      float v = ndvi[t][i];
      if (is_fill(v)) continue;
      out[t][i] = 100.0f * (v - mn) / (mx - mn);
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<Raster2D> vci(std::span<const Raster2D> ndvi_series) {
  if (ndvi_series.size() < 2)
    throw Error(Errc::insufficient_history,
                "VCI needs at least two time steps");
  for (const Raster2D& r : ndvi_series)
    if (!(r.grid() == ndvi_series.front().grid()))
      throw Error(Errc::grid_mismatch, "VCI series grids differ");

  std::vector<std::span<const float>> planes;
  planes.reserve(ndvi_series.size());
  for (const Raster2D& r : ndvi_series) planes.push_back(r.values());
  auto data = detail::vci_planes(planes, ndvi_series.front().size());

  std::vector<Raster2D> out;
  out.reserve(data.size());
  for (auto& p : data)
    out.emplace_back(ndvi_series.front().grid(), std::move(p));
  return out;
}

}  // namespace oceandc

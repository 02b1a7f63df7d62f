#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oceandc/bands.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/raster.hpp"

// Threshold classification of NDWI, WRI-2 and OSI rasters into thematic
// class codes. Codes start at 1 in interval order; values outside every
// interval map to 0; fill stays fill.

namespace oceandc {

enum class SensorScope { All, Landsat, Sentinel2 };

struct ClassInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;  // open bound excludes the endpoint
  bool hi_open = true;
  std::string label;
  int code = 0;

  bool contains(double v) const {
    bool above = lo_open ? v > lo : v >= lo;
    bool below = hi_open ? v < hi : v <= hi;
    return above && below;
  }
};

struct ClassScheme {
  int index = 0;
  SensorScope scope = SensorScope::All;
  std::vector<ClassInterval> classes;
};

inline ClassScheme scheme_for(int index_id, Sensor sensor) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  ClassScheme s;
  s.index = index_id;
  if (index_id == band::ndwi) {
    s.classes = {
        {-1.0, -0.3, false, true, "Drought, Non-Aqueous Surfaces", 1},
        {-0.3, 0.0, false, true, "Moderate Drought, Non-Aqueous Surfaces", 2},
        {0.0, 0.2, false, true, "Flooding, Humidity", 3},
        {0.2, 1.0, false, false, "Water Surface", 4},
    };
  } else if (index_id == band::wri2) {
    s.classes = {
        {-1.0, -0.75, false, true, "Critical Water Areas", 1},
        {-0.75, -0.25, false, true, "Normal Water Quality", 2},
        {-0.25, 0.0, false, true, "Wet Ground / Vegetation", 3},
        {0.0, 1.0, false, false, "Ground / Infrastructures", 4},
    };
  } else if (index_id == band::osi) {
    if (is_landsat(sensor)) {
      s.scope = SensorScope::Landsat;
      s.classes = {
          {-inf, 1.9, true, true, "Building / Infrastructures", 1},
          {1.9, 2.5, false, false, "Vegetation Regions", 2},
          {2.5, inf, true, true, "Water Bodies", 3},
      };
    } else {
      s.scope = SensorScope::Sentinel2;
      s.classes = {
          {0.75, 1.0, false, true, "Vegetation Regions", 1},
          {1.0, 1.9, false, true, "Building / Infrastructures", 2},
          {1.9, 2.5, false, true, "Water, Blue-Radiant", 3},
          {2.5, inf, false, true, "Water, Blue-Absorbing", 4},
      };
    }
  } else {
    throw Error(Errc::no_scheme, "no classification scheme for band '" +
                                     band_name(index_id) + "'");
  }
  return s;
}

// Class-code raster; codes are stored in the common float plane type so
// cubes and writers stay homogeneous. Interval bounds are compared at
// 32-bit precision, the precision of the plane values, so a plane value
// sitting exactly on a boundary lands in the interval the table says.
inline Raster2D classify(const Raster2D& raster, int raster_band,
                         const ClassScheme& scheme) {
  if (raster_band != scheme.index)
    throw Error(Errc::scheme_mismatch,
                "raster band '" + band_name(raster_band) +
                    "' does not match scheme for '" + band_name(scheme.index) + "'");
  struct FloatInterval {
    float lo, hi;
    bool lo_open, hi_open;
    float code;
  };
  std::vector<FloatInterval> intervals;
  intervals.reserve(scheme.classes.size());
  for (const ClassInterval& c : scheme.classes)
    intervals.push_back({static_cast<float>(c.lo), static_cast<float>(c.hi),
                         c.lo_open, c.hi_open, static_cast<float>(c.code)});

  Raster2D out(raster.grid());
  const auto& in = raster.values();
  auto& dst = out.values();
  for (std::size_t i = 0; i < in.size(); ++i) {
    float v = in[i];
    if (is_fill(v)) continue;
    float code = 0.0f;
    for (const FloatInterval& c : intervals) {
      bool above = c.lo_open ? v > c.lo : v >= c.lo;
      bool below = c.hi_open ? v < c.hi : v <= c.hi;
      if (above && below) {
        code = c.code;
        break;
      }
    }
    dst[i] = code;
  }
  return out;
}

inline nlohmann::json scheme_to_json(const ClassScheme& scheme) {
  nlohmann::json j;
  j["index"] = band_name(scheme.index);
  j["sensor_scope"] = scheme.scope == SensorScope::All        ? "all"
                      : scheme.scope == SensorScope::Landsat  ? "Landsat"
                                                              : "Sentinel2";
  j["out_of_range_code"] = 0;
  auto bound = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  for (const ClassInterval& c : scheme.classes) {
    j["classes"].push_back({{"code", c.code},
                            {"label", c.label},
                            {"lo", bound(c.lo)},
                            {"hi", bound(c.hi)},
                            {"lo_open", c.lo_open},
                            {"hi_open", c.hi_open}});
  }
  return j;
}

}  // namespace oceandc

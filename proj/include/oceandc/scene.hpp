#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "oceandc/bands.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/raster.hpp"

namespace oceandc {

// Kelvin-producing calibration for one thermal band.
struct ThermalCal {
  double k1 = 0;
  double k2 = 0;
  double radiance_scale = 0;   // ML
  double radiance_offset = 0;  // AL
};

struct RadiometricParams {
  double reflectance_scale = 1;
  double reflectance_offset = 0;
  std::optional<ThermalCal> tirs1;
  std::optional<ThermalCal> tirs2;

  void validate(Sensor sensor) const {
    if (reflectance_scale == 0)
      throw Error(Errc::config_error, "reflectance scale must be nonzero");
    if (is_landsat(sensor) && (!tirs1 || !tirs2))
      throw Error(Errc::missing_key,
                  "Landsat radiometry requires thermal calibration constants");
  }
};

// One satellite acquisition: native band rasters keyed by the provider's
// band label, plus the calibration constants to interpret them.
struct Scene {
  Sensor sensor = Sensor::Sentinel2;
  std::int64_t acquired_at = 0;
  std::string id;
  std::map<std::string, Raster2D> native_bands;
  RadiometricParams radiometry;
};

// Every native label must exist in the sensor's band-mapping table.
inline void validate_native_labels(Sensor sensor,
                                   const std::map<std::string, Raster2D>& bands) {
  for (const auto& [label, raster] : bands) {
    (void)raster;
    if (native_band_for(sensor, label) == 0)
      throw Error(Errc::unknown_band,
                  std::string("native band '") + label + "' is not defined for " +
                      sensor_name(sensor));
  }
}

}  // namespace oceandc

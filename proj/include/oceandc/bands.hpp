#pragma once

#include <array>
#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "oceandc/errors.hpp"

namespace oceandc {

enum class Sensor { Landsat8, Landsat9, Sentinel2 };

inline const char* sensor_name(Sensor s) {
  switch (s) {
    case Sensor::Landsat8: return "Landsat8";
    case Sensor::Landsat9: return "Landsat9";
    case Sensor::Sentinel2: return "Sentinel2";
  }
  return "?";
}

inline Sensor sensor_from_name(std::string_view name) {
  if (name == "Landsat8") return Sensor::Landsat8;
  if (name == "Landsat9") return Sensor::Landsat9;
  if (name == "Sentinel2") return Sensor::Sentinel2;
  throw Error(Errc::config_error, "unknown sensor '" + std::string(name) + "'");
}

inline bool is_landsat(Sensor s) { return s != Sensor::Sentinel2; }

// The fixed 43-entry product catalogue. IDs 1-16 are sensor bands,
// 17-43 are computed products.
inline constexpr int kBandCount = 43;
inline constexpr int kFirstComputedBand = 17;

namespace band {
inline constexpr int coastal_aerosol = 1;
inline constexpr int blue = 2;
inline constexpr int green = 3;
inline constexpr int red = 4;
inline constexpr int nir = 5;
inline constexpr int swir1 = 6;
inline constexpr int swir2 = 7;
inline constexpr int cirrus = 8;
inline constexpr int vre1 = 9;
inline constexpr int vre2 = 10;
inline constexpr int vre3 = 11;
inline constexpr int vre4 = 12;
inline constexpr int water_vapour = 13;
inline constexpr int panchromatic = 14;
inline constexpr int tirs1 = 15;
inline constexpr int tirs2 = 16;
inline constexpr int ndvi = 17;
inline constexpr int ndwi = 18;
inline constexpr int ndvi_vre1 = 19;
inline constexpr int ndvi_vre2 = 20;
inline constexpr int ndvi_vre3 = 21;
inline constexpr int ndvi_vre4 = 22;
inline constexpr int lswi1 = 23;
inline constexpr int lswi2 = 24;
inline constexpr int arvi = 25;
inline constexpr int msavi2 = 26;
inline constexpr int mtvi2 = 27;
inline constexpr int vari = 28;
inline constexpr int tgi = 29;
inline constexpr int lst1 = 30;
inline constexpr int lst2 = 31;
inline constexpr int lst_celsius = 32;
inline constexpr int lst_fahrenheit = 33;
inline constexpr int vci = 34;
inline constexpr int mndwi1 = 35;
inline constexpr int mndwi2 = 36;
inline constexpr int wri1 = 37;
inline constexpr int wri2 = 38;
inline constexpr int ndti = 39;
inline constexpr int awei = 40;
inline constexpr int osi = 41;
inline constexpr int nbr1 = 42;
inline constexpr int nbr2 = 43;
}  // namespace band

inline constexpr std::array<const char*, kBandCount> kBandNames = {
    "COASTAL AEROSOL",  //  1
    "BLUE",             //  2
    "GREEN",            //  3
    "RED",              //  4
    "NIR",              //  5
    "SWIR-1",           //  6
    "SWIR-2",           //  7
    "CIRRUS",           //  8
    "VRE-1",            //  9
    "VRE-2",            // 10
    "VRE-3",            // 11
    "VRE-4",            // 12
    "WATER VAPOUR",     // 13
    "PANCHROMATIC",     // 14
    "TIRS-1",           // 15
    "TIRS-2",           // 16
    "NDVI",             // 17
    "NDWI",             // 18
    "NDVI (VRE-1)",     // 19
    "NDVI (VRE-2)",     // 20
    "NDVI (VRE-3)",     // 21
    "NDVI (VRE-4)",     // 22
    "LSWI-1",           // 23
    "LSWI-2",           // 24
    "ARVI",             // 25
    "MSAVI2",           // 26
    "MTVI2",            // 27
    "VARI",             // 28
    "TGI",              // 29
    "LST-1",            // 30
    "LST-2",            // 31
    "LST-CELSIUS",      // 32
    "LST-FAHRENHEIT",   // 33
    "VCI",              // 34
    "MNDWI-1",          // 35
    "MNDWI-2",          // 36
    "WRI-1",            // 37
    "WRI-2",            // 38
    "NDTI",             // 39
    "AWEI",             // 40
    "OSI",              // 41
    "NBR-1",            // 42
    "NBR-2",            // 43
};

inline bool is_valid_band(int id) { return id >= 1 && id <= kBandCount; }
inline bool is_sensor_band(int id) { return id >= 1 && id < kFirstComputedBand; }
inline bool is_computed_band(int id) {
  return id >= kFirstComputedBand && id <= kBandCount;
}

inline std::string band_name(int id) {
  if (!is_valid_band(id))
    throw Error(Errc::unknown_band, "band id " + std::to_string(id) +
                                        " outside [1, 43]");
  return kBandNames[static_cast<std::size_t>(id - 1)];
}

// Case-insensitive lookup of a catalogue label.
inline int band_id_of(std::string_view name) {
  auto eq = [](std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(a[i])) !=
          std::toupper(static_cast<unsigned char>(b[i])))
        return false;
    return true;
  };
  for (int id = 1; id <= kBandCount; ++id)
    if (eq(name, kBandNames[static_cast<std::size_t>(id - 1)])) return id;
  throw Error(Errc::unknown_band, "unknown band '" + std::string(name) + "'");
}

// Native band label -> catalogue id, fixed per sensor family.
inline const std::map<std::string, int>& sensor_band_mapping(Sensor s) {
  static const std::map<std::string, int> sentinel2 = {
      {"B01", band::coastal_aerosol}, {"B02", band::blue},
      {"B03", band::green},           {"B04", band::red},
      {"B05", band::vre1},            {"B06", band::vre2},
      {"B07", band::vre3},            {"B08", band::nir},
      {"B8A", band::vre4},            {"B09", band::water_vapour},
      {"B10", band::cirrus},          {"B11", band::swir1},
      {"B12", band::swir2},
  };
  static const std::map<std::string, int> landsat = {
      {"B1", band::coastal_aerosol}, {"B2", band::blue},
      {"B3", band::green},           {"B4", band::red},
      {"B5", band::nir},             {"B6", band::swir1},
      {"B7", band::swir2},           {"B8", band::panchromatic},
      {"B9", band::cirrus},          {"B10", band::tirs1},
      {"B11", band::tirs2},
  };
  return s == Sensor::Sentinel2 ? sentinel2 : landsat;
}

// Catalogue id this sensor delivers natively, or 0.
inline int native_band_for(Sensor s, const std::string& label) {
  const auto& m = sensor_band_mapping(s);
  auto it = m.find(label);
  return it == m.end() ? 0 : it->second;
}

inline bool sensor_provides(Sensor s, int band_id) {
  for (const auto& [label, id] : sensor_band_mapping(s))
    if (id == band_id) return true;
  return false;
}

}  // namespace oceandc

#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "oceandc/detail/bytes.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/scene.hpp"

// Radiometric constants come either from the provider's flat key=value
// metadata (Landsat MTL style) or from the toolkit's own JSON sidecar
// {scale, offset, K1?, K2?, ML?, AL?}.

namespace oceandc {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n\"");
  std::size_t b = s.find_last_not_of(" \t\r\n\"");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

inline std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!key.empty() && key != "GROUP" && key != "END_GROUP") kv[key] = value;
  }
  return kv;
}

inline double require_number(const std::map<std::string, std::string>& kv,
                             const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw Error(Errc::missing_key, "metadata key '" + key + "' missing");
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw Error(Errc::parse_error,
                "metadata key '" + key + "' is not a number: '" + it->second + "'");
  }
}

inline RadiometricParams params_from_mtl(
    const std::map<std::string, std::string>& kv, Sensor sensor) {
  RadiometricParams p;
  if (is_landsat(sensor)) {
    // Landsat MTL carries per-band reflectance factors; all reflective
    // bands share one value, so the first present band wins.
    bool found = false;
    for (int b = 1; b <= 9 && !found; ++b) {
      auto mult = kv.find("REFLECTANCE_MULT_BAND_" + std::to_string(b));
      if (mult == kv.end()) continue;
      p.reflectance_scale = require_number(kv, "REFLECTANCE_MULT_BAND_" + std::to_string(b));
      p.reflectance_offset = require_number(kv, "REFLECTANCE_ADD_BAND_" + std::to_string(b));
      found = true;
    }
    if (!found)
      throw Error(Errc::missing_key, "metadata key 'REFLECTANCE_MULT_BAND_*' missing");
    ThermalCal t10{require_number(kv, "K1_CONSTANT_BAND_10"),
                   require_number(kv, "K2_CONSTANT_BAND_10"),
                   require_number(kv, "RADIANCE_MULT_BAND_10"),
                   require_number(kv, "RADIANCE_ADD_BAND_10")};
    ThermalCal t11{require_number(kv, "K1_CONSTANT_BAND_11"),
                   require_number(kv, "K2_CONSTANT_BAND_11"),
                   require_number(kv, "RADIANCE_MULT_BAND_11"),
                   require_number(kv, "RADIANCE_ADD_BAND_11")};
    p.tirs1 = t10;
    p.tirs2 = t11;
  } else {
    p.reflectance_scale = require_number(kv, "SCALE");
    p.reflectance_offset = require_number(kv, "OFFSET");
  }
  return p;
}

inline double require_json_number(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key))
    throw Error(Errc::missing_key, "metadata key '" + key + "' missing");
  if (!j[key].is_number())
    throw Error(Errc::parse_error, "metadata key '" + key + "' is not a number");
  return j[key].get<double>();
}

inline RadiometricParams params_from_sidecar(const nlohmann::json& j,
                                             Sensor sensor) {
  RadiometricParams p;
  p.reflectance_scale = require_json_number(j, "scale");
  p.reflectance_offset = require_json_number(j, "offset");
  if (is_landsat(sensor)) {
    // The sidecar carries one thermal constant set; it applies to both
    // TIRS bands.
    ThermalCal t{require_json_number(j, "K1"), require_json_number(j, "K2"),
                 require_json_number(j, "ML"), require_json_number(j, "AL")};
    p.tirs1 = t;
    p.tirs2 = t;
  }
  return p;
}

}  // namespace detail

inline RadiometricParams read_metadata(const std::string& path, Sensor sensor) {
  auto bytes = detail::read_file(path);
  std::string text(bytes.begin(), bytes.end());
  std::size_t first = text.find_first_not_of(" \t\r\n");

  RadiometricParams p;
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
      throw Error(Errc::parse_error, "malformed JSON sidecar '" + path + "'");
    p = detail::params_from_sidecar(j, sensor);
  } else {
    p = detail::params_from_mtl(detail::parse_key_values(text), sensor);
  }
  p.validate(sensor);
  return p;
}

}  // namespace oceandc

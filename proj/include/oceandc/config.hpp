#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oceandc/bands.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/timeutil.hpp"

// Declarative build configuration, one JSON document. Validation errors
// name the JSON path of the offending value.

namespace oceandc {

struct SceneConfig {
  Sensor sensor = Sensor::Sentinel2;
  std::int64_t acquired_at = 0;
  std::string id;
  std::map<std::string, std::string> band_paths;  // native label -> GeoTIFF
  std::string metadata_path;
};

struct ClassificationRequest {
  std::string index;
  int time = 0;
  std::string output;
};

struct BuildConfig {
  std::string aoi_shapefile;
  int aoi_epsg = 0;
  int target_epsg = 0;
  double target_resolution = 0;
  std::vector<SceneConfig> scenes;
  std::string output;
  std::vector<int> products;  // empty = all 43
  std::vector<ClassificationRequest> classifications;
  std::optional<std::string> history;
};

namespace detail {

[[noreturn]] inline void config_fail(const std::string& path,
                                     const std::string& what) {
  throw Error(Errc::config_error, path + ": " + what);
}

inline const nlohmann::json& member(const nlohmann::json& j,
                                    const std::string& path,
                                    const std::string& key) {
  if (!j.is_object()) config_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) config_fail(path + "." + key, "missing");
  return *it;
}

inline std::string string_at(const nlohmann::json& j, const std::string& path,
                             const std::string& key) {
  const auto& v = member(j, path, key);
  if (!v.is_string()) config_fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

inline double number_at(const nlohmann::json& j, const std::string& path,
                        const std::string& key) {
  const auto& v = member(j, path, key);
  if (!v.is_number()) config_fail(path + "." + key, "expected a number");
  return v.get<double>();
}

inline int int_at(const nlohmann::json& j, const std::string& path,
                  const std::string& key) {
  const auto& v = member(j, path, key);
  if (!v.is_number_integer()) config_fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

}  // namespace detail

inline BuildConfig parse_build_config(const nlohmann::json& j) {
  using detail::config_fail;
  BuildConfig cfg;
  if (!j.is_object()) config_fail("$", "configuration must be a JSON object");

  const auto& aoi = detail::member(j, "$", "aoi");
  cfg.aoi_shapefile = detail::string_at(aoi, "$.aoi", "shapefile");
  cfg.aoi_epsg = detail::int_at(aoi, "$.aoi", "epsg");

  cfg.target_epsg = detail::int_at(j, "$", "target_epsg");
  cfg.target_resolution = detail::number_at(j, "$", "target_resolution");
  if (!(cfg.target_resolution > 0))
    config_fail("$.target_resolution", "must be > 0");

  cfg.output = detail::string_at(j, "$", "output");

  const auto& scenes = detail::member(j, "$", "scenes");
  if (!scenes.is_array() || scenes.empty())
    config_fail("$.scenes", "expected a non-empty array");
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    std::string path = "$.scenes[" + std::to_string(i) + "]";
    const auto& s = scenes[i];
    SceneConfig sc;
    try {
      sc.sensor = sensor_from_name(detail::string_at(s, path, "sensor"));
    } catch (const Error& e) {
      if (e.code() != Errc::config_error) throw;
      config_fail(path + ".sensor", e.message());
    }
    try {
      sc.acquired_at = parse_iso8601_utc(detail::string_at(s, path, "acquired_at"));
    } catch (const Error& e) {
      if (e.code() != Errc::parse_error) throw;
      config_fail(path + ".acquired_at", e.message());
    }
    sc.id = s.contains("id") ? detail::string_at(s, path, "id")
                             : std::string(sensor_name(sc.sensor)) + "-" +
                                   format_iso8601_utc(sc.acquired_at);
    const auto& bands = detail::member(s, path, "bands");
    if (!bands.is_object() || bands.empty())
      config_fail(path + ".bands", "expected a non-empty object");
    for (auto it = bands.begin(); it != bands.end(); ++it) {
      if (!it.value().is_string())
        config_fail(path + ".bands." + it.key(), "expected a file path string");
      if (native_band_for(sc.sensor, it.key()) == 0)
        config_fail(path + ".bands." + it.key(),
                    "not a native band of " + std::string(sensor_name(sc.sensor)));
      sc.band_paths[it.key()] = it.value().get<std::string>();
    }
    sc.metadata_path = detail::string_at(s, path, "metadata");
    cfg.scenes.push_back(std::move(sc));
  }

  if (j.contains("products")) {
    const auto& products = j["products"];
    if (!products.is_array()) config_fail("$.products", "expected an array");
    for (std::size_t i = 0; i < products.size(); ++i) {
      std::string path = "$.products[" + std::to_string(i) + "]";
      const auto& p = products[i];
      try {
        if (p.is_string()) {
          cfg.products.push_back(band_id_of(p.get<std::string>()));
        } else if (p.is_number_integer()) {
          int id = p.get<int>();
          if (!is_valid_band(id)) config_fail(path, "band id outside [1, 43]");
          cfg.products.push_back(id);
        } else {
          config_fail(path, "expected a band name or id");
        }
      } catch (const Error& e) {
        if (e.code() != Errc::unknown_band) throw;
        config_fail(path, e.message());
      }
    }
  }

  if (j.contains("classifications")) {
    const auto& cls = j["classifications"];
    if (!cls.is_array()) config_fail("$.classifications", "expected an array");
    for (std::size_t i = 0; i < cls.size(); ++i) {
      std::string path = "$.classifications[" + std::to_string(i) + "]";
      ClassificationRequest req;
      req.index = detail::string_at(cls[i], path, "index");
      req.output = detail::string_at(cls[i], path, "output");
      if (cls[i].contains("time")) req.time = detail::int_at(cls[i], path, "time");
      if (req.time < 0) config_fail(path + ".time", "must be >= 0");
      cfg.classifications.push_back(std::move(req));
    }
  }

  if (j.contains("history")) {
    if (!j["history"].is_string()) config_fail("$.history", "expected a string");
    cfg.history = j["history"].get<std::string>();
  }
  return cfg;
}

inline BuildConfig load_build_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw Error(Errc::config_error, "'" + path + "' is not valid JSON");
  return parse_build_config(j);
}

}  // namespace oceandc

#pragma once

#include <stdexcept>
#include <string>

namespace oceandc {

enum class Errc {
  unknown_band,
  unsupported_format,
  parse_error,
  missing_georeference,
  unsupported_shape_type,
  missing_key,
  unsupported_crs,
  out_of_projection_domain,
  empty_geometry,
  empty_intersection,
  non_integer_ratio,
  missing_input,
  insufficient_history,
  duplicate_timestamp,
  grid_mismatch,
  scheme_mismatch,
  no_scheme,
  not_netcdf,
  schema_error,
  write_error,
  too_large,
  config_error,
  io_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unknown_band: return "UnknownBand";
    case Errc::unsupported_format: return "UnsupportedFormat";
    case Errc::parse_error: return "ParseError";
    case Errc::missing_georeference: return "MissingGeoreference";
    case Errc::unsupported_shape_type: return "UnsupportedShapeType";
    case Errc::missing_key: return "MissingKey";
    case Errc::unsupported_crs: return "UnsupportedCrs";
    case Errc::out_of_projection_domain: return "OutOfProjectionDomain";
    case Errc::empty_geometry: return "EmptyGeometry";
    case Errc::empty_intersection: return "EmptyIntersection";
    case Errc::non_integer_ratio: return "NonIntegerRatio";
    case Errc::missing_input: return "MissingInput";
    case Errc::insufficient_history: return "InsufficientHistory";
    case Errc::duplicate_timestamp: return "DuplicateTimestamp";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::scheme_mismatch: return "SchemeMismatch";
    case Errc::no_scheme: return "NoScheme";
    case Errc::not_netcdf: return "NotNetcdf";
    case Errc::schema_error: return "SchemaError";
    case Errc::write_error: return "WriteError";
    case Errc::too_large: return "TooLarge";
    case Errc::config_error: return "ConfigError";
    case Errc::io_error: return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  Errc code() const noexcept { return code_; }

  // message without the code prefix, for re-wrapping with context
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace oceandc

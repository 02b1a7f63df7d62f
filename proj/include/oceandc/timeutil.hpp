#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "oceandc/errors.hpp"

namespace oceandc {

namespace detail {

// Days from civil date, Howard Hinnant's algorithm. Valid far beyond any
// satellite era.
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

}  // namespace detail

// Parses "YYYY-MM-DDTHH:MM:SSZ" into Unix seconds.
inline std::int64_t parse_iso8601_utc(std::string_view s) {
  int y, mo, d, h, mi, se;
  char t, z;
  if (std::sscanf(std::string(s).c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c",
                  &y, &mo, &d, &t, &h, &mi, &se, &z) != 8 ||
      (t != 'T' && t != ' ') || z != 'Z')
    throw Error(Errc::parse_error, "bad UTC timestamp '" + std::string(s) +
                                       "', expected YYYY-MM-DDTHH:MM:SSZ");
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60)
    throw Error(Errc::parse_error, "timestamp field out of range in '" +
                                       std::string(s) + "'");
  return detail::days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

inline std::string format_iso8601_utc(std::int64_t t) {
  std::int64_t days = t / 86400;
  std::int64_t sod = t % 86400;
  if (sod < 0) { sod += 86400; --days; }
  int y, m, d;
  detail::civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                static_cast<int>(sod % 60));
  return buf;
}

}  // namespace oceandc

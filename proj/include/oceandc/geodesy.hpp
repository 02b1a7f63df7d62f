#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oceandc/errors.hpp"
#include "oceandc/raster.hpp"

namespace oceandc {

enum class CrsKind { Geographic, TransverseMercator };

// Minimal registry entry: WGS-84 geographic or a UTM-style transverse
// Mercator zone on the WGS-84 ellipsoid.
struct CrsDef {
  int epsg = 0;
  CrsKind kind = CrsKind::Geographic;
  double semi_major = 6378137.0;
  double flattening = 1.0 / 298.257223563;
  // transverse Mercator parameters
  double central_meridian_deg = 0;
  double scale_factor = 1;
  double false_easting = 0;
  double false_northing = 0;

  bool projected() const { return kind == CrsKind::TransverseMercator; }
};

// Supported set: 4326, 32601-32660 (UTM north), 32701-32760 (UTM south).
inline CrsDef epsg_lookup(int code) {
  CrsDef def;
  def.epsg = code;
  if (code == 4326) return def;
  int zone = 0;
  bool south = false;
  if (code >= 32601 && code <= 32660) {
    zone = code - 32600;
  } else if (code >= 32701 && code <= 32760) {
    zone = code - 32700;
    south = true;
  } else {
    throw Error(Errc::unsupported_crs, "EPSG:" + std::to_string(code) +
                                           " not in supported set");
  }
  def.kind = CrsKind::TransverseMercator;
  def.central_meridian_deg = -183.0 + 6.0 * zone;
  def.scale_factor = 0.9996;
  def.false_easting = 500000.0;
  def.false_northing = south ? 10000000.0 : 0.0;
  return def;
}

namespace detail {

inline constexpr double kDeg = 3.14159265358979323846 / 180.0;

// tan of the conformal latitude from tan(phi)
inline double taupf(double tau, double es) {
  double tau1 = std::hypot(1.0, tau);
  double sig = std::sinh(es * std::atanh(es * tau / tau1));
  return std::hypot(1.0, sig) * tau - sig * tau1;
}

// inverse of taupf by Newton iteration
inline double tauf(double taup, double es) {
  static const double tol = std::sqrt(std::numeric_limits<double>::epsilon()) / 10;
  double e2m = 1.0 - es * es;
  double tau = taup / e2m;
  double stol = tol * std::fmax(1.0, std::fabs(taup));
  for (int i = 0; i < 7; ++i) {
    double taupa = taupf(tau, es);
    double dtau = (taup - taupa) * (1 + e2m * tau * tau) /
                  (e2m * std::hypot(1.0, tau) * std::hypot(1.0, taupa));
    tau += dtau;
    if (!(std::fabs(dtau) >= stol)) break;
  }
  return tau;
}

}  // namespace detail

// Gauss-Krueger transverse Mercator, series in the third flattening
// truncated at order 6. Truncation error is a few nanometers inside the
// validity domain |lat| <= 84, |lon - lon0| <= 60.
class TransverseMercator {
 public:
  explicit TransverseMercator(const CrsDef& crs)
      : a_(crs.semi_major),
        f_(crs.flattening),
        k0_(crs.scale_factor),
        lon0_(crs.central_meridian_deg),
        fe_(crs.false_easting),
        fn_(crs.false_northing) {
    if (!crs.projected())
      throw Error(Errc::unsupported_crs, "CRS is not projected");
    double n = f_ / (2 - f_);
    es_ = std::sqrt(f_ * (2 - f_));
    a1_ = a_ / (1 + n) * (n * n * (n * n * (n * n + 4) + 64) + 256) / 256;
    alp_[0] = n * (n * (n * (n * (n * (31564 * n - 66675) + 34440) + 47250) -
                        100800) + 75600) / 151200;
    alp_[1] = n * n * (n * (n * ((863232 - 1983433 * n) * n + 748608) -
                            1161216) + 524160) / 1935360;
    alp_[2] = n * n * n * (n * (n * (670412 * n + 406647) - 533952) + 184464) /
              725760;
    alp_[3] = n * n * n * n * (n * (6601661 * n - 7732800) + 2230245) / 7257600;
    alp_[4] = (3438171 - 13675556 * n) * n * n * n * n * n / 7983360;
    alp_[5] = 212378941 * n * n * n * n * n * n / 319334400;
    bet_[0] = n * (n * (n * (n * (n * (384796 * n - 382725) - 6720) + 932400) -
                        1612800) + 1209600) / 2419200;
    bet_[1] = n * n * (n * (n * ((1695744 - 1118711 * n) * n - 1174656) +
                            258048) + 80640) / 3870720;
    bet_[2] = n * n * n * (n * (n * (22276 * n - 16929) - 15984) + 12852) /
              362880;
    bet_[3] = n * n * n * n * ((-830251 * n - 158400) * n + 197865) / 7257600;
    bet_[4] = (453717 - 435388 * n) * n * n * n * n * n / 15966720;
    bet_[5] = 20648693 * n * n * n * n * n * n / 638668800;
  }

  Point forward(double lat_deg, double lon_deg) const {
    check_domain(lat_deg, lon_deg);
    double phi = lat_deg * detail::kDeg;
    double lam = ang_diff(lon0_, lon_deg) * detail::kDeg;

    double taup = detail::taupf(std::tan(phi), es_);
    double cl = std::cos(lam);
    double xip = std::atan2(taup, cl);
    double etap = std::asinh(std::sin(lam) / std::hypot(taup, cl));

    double xi = xip, eta = etap;
    for (int j = 0; j < 6; ++j) {
      double arg = 2.0 * (j + 1);
      xi += alp_[j] * std::sin(arg * xip) * std::cosh(arg * etap);
      eta += alp_[j] * std::cos(arg * xip) * std::sinh(arg * etap);
    }
    return {fe_ + k0_ * a1_ * eta, fn_ + k0_ * a1_ * xi};
  }

  Point inverse(double easting, double northing) const {
    double xi = (northing - fn_) / (k0_ * a1_);
    double eta = (easting - fe_) / (k0_ * a1_);
    if (std::fabs(xi) > 1.6 || std::fabs(eta) > 1.2)
      throw Error(Errc::out_of_projection_domain,
                  "coordinates too far from the projection origin");

    double xip = xi, etap = eta;
    for (int j = 0; j < 6; ++j) {
      double arg = 2.0 * (j + 1);
      xip -= bet_[j] * std::sin(arg * xi) * std::cosh(arg * eta);
      etap -= bet_[j] * std::cos(arg * xi) * std::sinh(arg * eta);
    }

    double sh = std::sinh(etap);
    double cx = std::cos(xip);
    double taup = std::sin(xip) / std::hypot(sh, cx);
    double lat = std::atan(detail::tauf(taup, es_)) / detail::kDeg;
    double lon = lon0_ + std::atan2(sh, cx) / detail::kDeg;
    if (lon > 180) lon -= 360;
    if (lon <= -180) lon += 360;
    check_domain(lat, lon);
    return {lon, lat};
  }

  double central_meridian() const { return lon0_; }

 private:
  void check_domain(double lat_deg, double lon_deg) const {
    if (!(std::fabs(lat_deg) <= 84.0))
      throw Error(Errc::out_of_projection_domain,
                  "latitude " + std::to_string(lat_deg) + " outside [-84, 84]");
    if (!(std::fabs(ang_diff(lon0_, lon_deg)) <= 60.0))
      throw Error(Errc::out_of_projection_domain,
                  "longitude " + std::to_string(lon_deg) + " more than 60 deg from meridian " +
                      std::to_string(lon0_));
  }

  static double ang_diff(double from, double to) {
    double d = to - from;
    while (d > 180) d -= 360;
    while (d <= -180) d += 360;
    return d;
  }

  double a_, f_, k0_, lon0_, fe_, fn_;
  double es_, a1_;
  double alp_[6], bet_[6];
};

inline Point tm_forward(double lat_deg, double lon_deg, const CrsDef& crs) {
  return TransverseMercator(crs).forward(lat_deg, lon_deg);
}

inline Point tm_inverse(double easting, double northing, const CrsDef& crs) {
  return TransverseMercator(crs).inverse(easting, northing);
}

// Point transform between two supported CRS. All supported CRS share the
// WGS-84 datum, so the route is inverse projection -> forward projection
// with no datum step. Geographic points are (lon, lat).
class CrsTransform {
 public:
  CrsTransform(int src_epsg, int dst_epsg)
      : identity_(src_epsg == dst_epsg) {
    if (identity_) {
      epsg_lookup(src_epsg);  // still validate
      return;
    }
    CrsDef src = epsg_lookup(src_epsg);
    CrsDef dst = epsg_lookup(dst_epsg);
    if (src.projected()) src_.emplace(src);
    if (dst.projected()) dst_.emplace(dst);
  }

  Point operator()(Point p) const {
    if (identity_) return p;
    Point geo = src_ ? src_->inverse(p.x, p.y) : p;
    return dst_ ? dst_->forward(geo.y, geo.x) : geo;
  }

  bool identity() const { return identity_; }

 private:
  bool identity_;
  std::optional<TransverseMercator> src_;
  std::optional<TransverseMercator> dst_;
};

inline std::vector<Point> transform_points(std::span<const Point> points,
                                           int src_epsg, int dst_epsg) {
  CrsTransform t(src_epsg, dst_epsg);
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(t(p));
  return out;
}

}  // namespace oceandc

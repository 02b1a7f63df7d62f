// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each check pins its tolerance in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "helpers.hpp"
#include "index_oracle.hpp"
#include "oceandc/oceandc.hpp"

using namespace oceandc;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --------------------------------------------------------------------
// 1. index-oracle equivalence, 200 random 16x16 trials, exact in 32-bit

void criterion_index_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(777);
  std::uniform_real_distribution<float> refl(-0.2f, 1.3f);
  std::uniform_real_distribution<float> kelvin(230.0f, 330.0f);
  std::uniform_real_distribution<double> coin(0, 1);
  GridSpec g = testutil::make_grid(32634, 500000, 4200000, 10, 16, 16);

  for (int trial = 0; trial < 200; ++trial) {
    SceneCube cube(g, 0, Sensor::Landsat8, "a");
    for (int id = 1; id <= 16; ++id) {
      bool thermal = id == band::tirs1 || id == band::tirs2;
      for (auto& v : cube.plane(id))
        v = coin(rng) < 0.05 ? kFill : (thermal ? kelvin(rng) : refl(rng));
    }
    detail::compute_index_into(cube, band::ndvi, cube.plane(band::ndvi));
    detail::compute_index_into(cube, band::lst1, cube.plane(band::lst1));

    for (int id = kFirstComputedBand; id <= kBandCount; ++id) {
      if (id == band::vci) continue;
      Raster2D got = compute_index(cube, id);
      for (std::size_t i = 0; i < got.size(); ++i) {
        float want = oracle::product(cube, id, i);
        bool same = std::isnan(want) ? is_fill(got.values()[i])
                                     : got.values()[i] == want;
        check(same, "band " + std::to_string(id) + " trial " +
                        std::to_string(trial) + " pixel " + std::to_string(i));
      }
    }

    // VCI across a 3-step series
    std::vector<Raster2D> series;
    for (int t = 0; t < 3; ++t)
      series.push_back(testutil::random_raster(g, rng, -1, 1, 0.1));
    auto got = vci(series);
    for (std::size_t i = 0; i < g.pixel_count(); ++i) {
      float mn = std::numeric_limits<float>::infinity();
      float mx = -mn;
      int valid = 0;
      for (const auto& r : series) {
        float v = r.values()[i];
        if (std::isnan(v)) continue;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        ++valid;
      }
      for (std::size_t t = 0; t < 3; ++t) {
        float in = series[t].values()[i];
        float want = (valid < 2 || !(mx > mn) || std::isnan(in))
                         ? oracle::NaN
                         : 100.0f * (in - mn) / (mx - mn);
        float actual = got[t].values()[i];
        bool same = std::isnan(want) ? is_fill(actual) : actual == want;
        check(same, "VCI trial " + std::to_string(trial));
      }
    }
  }
  double dt = seconds_since(t0);
  check(dt < 5.0, "took " + std::to_string(dt) + " s, limit 5 s");
}

// --------------------------------------------------------------------
// 2. equation spot values

void criterion_spot_values() {
  GridSpec g = testutil::make_grid(32634, 0, 10, 10, 1, 1);
  SceneCube cube(g, 0, Sensor::Sentinel2, "spot");
  cube.plane(band::nir)[0] = 0.2f;
  cube.plane(band::swir1)[0] = 0.1f;
  float ndwi = compute_index(cube, band::ndwi).values()[0];
  check(std::fabs(ndwi - 1.0 / 3.0) < 1e-7,
        "NDWI(0.2, 0.1) = " + std::to_string(ndwi));

  cube.plane(band::green)[0] = 0.4f;
  cube.plane(band::red)[0] = 0.4f;
  cube.plane(band::nir)[0] = 0.6f;
  cube.plane(band::swir2)[0] = 0.2f;
  check(compute_index(cube, band::wri2).values()[0] == 0.0f,
        "WRI-2 with GREEN = RED must be 0");

  cube.plane(band::red)[0] = 0.17f;
  cube.plane(band::green)[0] = 0.17f;
  cube.plane(band::blue)[0] = 0.17f;
  check(compute_index(cube, band::osi).values()[0] == 2.0f,
        "OSI with equal RGB must be exactly 2");
}

// --------------------------------------------------------------------
// 3. geodesy round trip + independent reference agreement

void criterion_geodesy() {
  auto t0 = std::chrono::steady_clock::now();
  CrsDef crs = epsg_lookup(32634);
  TransverseMercator tm(crs);
  for (int lat = -80; lat <= 80; lat += 10) {
    for (int dlon = -6; dlon <= 6; ++dlon) {
      double lon = crs.central_meridian_deg + dlon;
      Point xy = tm.forward(lat, lon);
      Point ll = tm.inverse(xy.x, xy.y);
      check(std::fabs(ll.y - lat) < 1e-9 && std::fabs(ll.x - lon) < 1e-9,
            "round trip at lat " + std::to_string(lat));
    }
  }

  // reference values from tests/oracle/tm_reference.py (exact mapping,
  // 50-digit arithmetic)
  struct Ref { double lat, lon; int epsg; double e, n; };
  const Ref refs[] = {
      {37.9, 23.6, 32634, 728602.1116733761, 4197907.330025522},
      {0.0, 24.0, 32634, 833978.5569194605, 0.0},
      {-33.9, 18.4, 32734, 259583.2216604305, 6245888.045440768},
      {60.0, 25.0, 32635, 388455.9580231648, 6653097.435294964},
      {40.0, -74.0, 32618, 585360.4618427711, 4428236.064633091},
      {-37.8, 144.96, 32755, 320398.5917877136, 5814414.882838365},
      {80.0, 26.0, 32634, 596813.0547739663, 8885748.707734116},
      {37.9, 23.6, 32635, 201040.7619986661, 4200172.422305657},
  };
  for (const Ref& r : refs) {
    Point p = tm_forward(r.lat, r.lon, epsg_lookup(r.epsg));
    double err = std::hypot(p.x - r.e, p.y - r.n);
    check(err < 1e-3, "forward error " + std::to_string(err) + " m at lat " +
                          std::to_string(r.lat));
  }
  double dt = seconds_since(t0);
  check(dt < 1.0, "took " + std::to_string(dt) + " s, limit 1 s");
}

// --------------------------------------------------------------------
// 4. resampling histogram invariant + the 6x6 block case

void criterion_resampling() {
  std::mt19937 rng(4242);
  for (int k : {2, 3, 6}) {
    GridSpec g = testutil::make_grid(32634, 0, 1000, 10.0 * k, 11, 8);
    Raster2D r = testutil::random_raster(g, rng, 0, 50, 0.1);
    Raster2D out = resample_nn(r, 10.0);
    std::map<float, long> hin, hout;
    for (float v : r.values())
      if (!is_fill(v)) ++hin[v];
    for (float v : out.values())
      if (!is_fill(v)) ++hout[v];
    check(hin.size() == hout.size(), "histogram support changed");
    for (const auto& [value, count] : hin)
      check(hout[value] == count * k * k,
            "histogram count at k=" + std::to_string(k));
  }

  GridSpec g60 = testutil::make_grid(32634, 0, 120, 60, 2, 2);
  Raster2D r(g60);
  r.at(0, 0) = 1; r.at(0, 1) = 2; r.at(1, 0) = 3; r.at(1, 1) = 4;
  Raster2D fine = resample_nn(r, 10.0);
  check(fine.width() == 12 && fine.height() == 12, "60->10 m output shape");
  for (int row = 0; row < 12; ++row)
    for (int col = 0; col < 12; ++col)
      check(fine.at(row, col) == r.at(row / 6, col / 6),
            "6x6 constant block property");
}

// --------------------------------------------------------------------
// 5. classification boundary battery

void criterion_classification() {
  struct Case { int index; Sensor sensor; float value; int code; };
  constexpr float e = 1e-5f;
  const std::vector<Case> cases = {
      // NDWI
      {band::ndwi, Sensor::Sentinel2, -1.0f - e, 0},
      {band::ndwi, Sensor::Sentinel2, -1.0f, 1},
      {band::ndwi, Sensor::Sentinel2, -0.3f - e, 1},
      {band::ndwi, Sensor::Sentinel2, -0.3f, 2},
      {band::ndwi, Sensor::Sentinel2, 0.0f - e, 2},
      {band::ndwi, Sensor::Sentinel2, 0.0f, 3},
      {band::ndwi, Sensor::Sentinel2, 0.2f - e, 3},
      {band::ndwi, Sensor::Sentinel2, 0.2f, 4},
      {band::ndwi, Sensor::Sentinel2, 1.0f, 4},
      {band::ndwi, Sensor::Sentinel2, 1.0f + e, 0},
      // WRI
      {band::wri2, Sensor::Landsat8, -1.0f - e, 0},
      {band::wri2, Sensor::Landsat8, -1.0f, 1},
      {band::wri2, Sensor::Landsat8, -0.75f - e, 1},
      {band::wri2, Sensor::Landsat8, -0.75f, 2},
      {band::wri2, Sensor::Landsat8, -0.25f - e, 2},
      {band::wri2, Sensor::Landsat8, -0.25f, 3},
      {band::wri2, Sensor::Landsat8, 0.0f - e, 3},
      {band::wri2, Sensor::Landsat8, 0.0f, 4},
      {band::wri2, Sensor::Landsat8, 1.0f, 4},
      {band::wri2, Sensor::Landsat8, 1.0f + e, 0},
      // OSI, Landsat scheme
      {band::osi, Sensor::Landsat8, 1.9f - e, 1},
      {band::osi, Sensor::Landsat8, 1.9f, 2},
      {band::osi, Sensor::Landsat8, 2.5f, 2},
      {band::osi, Sensor::Landsat8, 2.5f + e, 3},
      // OSI, Sentinel-2 scheme
      {band::osi, Sensor::Sentinel2, 0.75f - e, 0},
      {band::osi, Sensor::Sentinel2, 0.75f, 1},
      {band::osi, Sensor::Sentinel2, 1.0f - e, 1},
      {band::osi, Sensor::Sentinel2, 1.0f, 2},
      {band::osi, Sensor::Sentinel2, 1.9f - e, 2},
      {band::osi, Sensor::Sentinel2, 1.9f, 3},
      {band::osi, Sensor::Sentinel2, 2.5f - e, 3},
      {band::osi, Sensor::Sentinel2, 2.5f, 4},
  };
  check(cases.size() >= 24, "boundary battery too small");
  GridSpec g = testutil::make_grid(32634, 0, 10, 10, 1, 1);
  for (const Case& c : cases) {
    Raster2D r(g, c.value);
    ClassScheme scheme = scheme_for(c.index, c.sensor);
    float got = classify(r, c.index, scheme).values()[0];
    std::ostringstream msg;
    msg << band_name(c.index) << "/" << sensor_name(c.sensor) << " value "
        << c.value << ": got " << got << ", want " << c.code;
    check(got == static_cast<float>(c.code), msg.str());
  }
}

// --------------------------------------------------------------------
// 6. mixed-sensor end-to-end build, ~512x512 AOI, < 10 s

void criterion_mixed_cube() {
  auto t0 = std::chrono::steady_clock::now();
  testutil::TempDir dir;
  auto fixture = testutil::make_build_fixture(dir, 5120, /*cross_zone=*/true);
  BuildConfig cfg = parse_build_config(fixture.config);
  std::ostringstream log;
  run_build(cfg, 4, log);

  HyperCube cube = read_netcdf(fixture.output_path);
  check(cube.times.size() == 3, "time axis length");
  check(cube.grid.width >= 512 && cube.grid.height >= 512, "AOI coverage");
  check(cube.data.size() ==
            cube.times.size() * 43ull * cube.grid.pixel_count(),
        "(T, 43, H, W) shape");
  check(cube.times[0] < cube.times[1] && cube.times[1] < cube.times[2],
        "strictly increasing time");
  check(cube.slices[0].sensor == Sensor::Sentinel2 &&
            cube.slices[1].sensor == Sensor::Sentinel2 &&
            cube.slices[2].sensor == Sensor::Landsat8,
        "slice provenance");
  for (std::size_t t = 0; t < 2; ++t) {
    check(cube.plane_fill_fraction(t, band::tirs1) == 1.0 &&
              cube.plane_fill_fraction(t, band::tirs2) == 1.0,
          "TIRS fill on Sentinel slice");
    check(cube.plane_fill_fraction(t, band::vre1) < 1.0,
          "VRE present on Sentinel slice");
  }
  check(cube.plane_fill_fraction(2, band::vre1) == 1.0 &&
            cube.plane_fill_fraction(2, band::ndvi_vre1) == 1.0,
        "VRE fill on Landsat slice");
  check(cube.plane_fill_fraction(2, band::tirs1) < 1.0,
        "TIRS present on Landsat slice");

  double dt = seconds_since(t0);
  check(dt < 10.0, "took " + std::to_string(dt) + " s, limit 10 s");
}

// --------------------------------------------------------------------
// 7. NetCDF round trip + third-party reader

void criterion_netcdf_roundtrip() {
  testutil::TempDir dir;
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<float> val(-100, 100);
  std::uniform_real_distribution<double> coin(0, 1);

  for (int i = 0; i < 50; ++i) {
    HyperCube cube;
    cube.grid = testutil::make_grid(i % 2 ? 32634 : 4326, 500000, 4200000,
                                    i % 2 ? 10.0 : 0.01, dim(rng), dim(rng));
    int t_len = 1 + i % 4;
    for (int t = 0; t < t_len; ++t) {
      cube.times.push_back(1000000LL * (t + 1) + i);
      cube.slices.push_back({t % 2 ? Sensor::Landsat8 : Sensor::Sentinel2,
                             "s" + std::to_string(t)});
    }
    cube.data.resize(cube.times.size() * cube.slice_size());
    for (auto& v : cube.data) v = coin(rng) < 0.1 ? kFill : val(rng);

    std::string path = dir.file("rt.nc");
    write_netcdf(cube, path);

    if (i == 0) {
      auto bytes = detail::read_file(path);
      check(bytes[0] == 0x43 && bytes[1] == 0x44 && bytes[2] == 0x46 &&
                bytes[3] == 0x02,
            "magic bytes 43 44 46 02");
    }

    HyperCube back = read_netcdf(path);
    check(back.grid == cube.grid, "grid round trip");
    check(back.times == cube.times, "time round trip");
    check(back.data.size() == cube.data.size() &&
              std::memcmp(back.data.data(), cube.data.data(),
                          cube.data.size() * sizeof(float)) == 0,
          "bitwise data round trip");
    for (std::size_t t = 0; t < cube.slices.size(); ++t)
      check(back.slices[t].sensor == cube.slices[t].sensor &&
                back.slices[t].source_id == cube.slices[t].source_id,
            "provenance round trip");
  }

  // third-party reader fixture
  HyperCube cube;
  cube.grid = testutil::make_grid(32634, 500000, 4200000, 10, 4, 5);
  cube.times = {1505293800, 1507200300};
  cube.slices = {{Sensor::Sentinel2, "S2-0913"}, {Sensor::Landsat8, "L8-1005"}};
  cube.data.resize(cube.times.size() * cube.slice_size());
  std::mt19937 rng2(11);
  for (auto& v : cube.data)
    v = coin(rng2) < 0.15 ? kFill : val(rng2);
  std::string nc = dir.file("fixture.nc");
  write_netcdf(cube, nc);

  std::ostringstream expected;
  expected << "{\"shape\": [2, 43, 5, 4], \"times\": [1505293800, 1507200300], ";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", cube.grid.origin_x + 0.5 * 10.0);
  expected << "\"x0\": " << buf << ", ";
  std::snprintf(buf, sizeof buf, "%.17g", cube.grid.origin_y - 0.5 * 10.0);
  expected << "\"y0\": " << buf << ", \"data\": [";
  for (std::size_t i = 0; i < cube.data.size(); ++i) {
    if (i) expected << ",";
    if (is_fill(cube.data[i])) {
      expected << "NaN";
    } else {
      std::snprintf(buf, sizeof buf, "%.9g", cube.data[i]);
      expected << buf;
    }
  }
  expected << "]}";
  std::string manifest = dir.file("expected.json");
  std::string text = expected.str();
  detail::write_file(manifest, std::vector<std::uint8_t>(text.begin(), text.end()));

  std::string cmd = std::string("python3 ") + OCEANDC_ORACLE_DIR +
                    "/check_netcdf.py " + nc + " " + manifest + " >/dev/null";
  int rc = std::system(cmd.c_str());
  check(WEXITSTATUS(rc) == 0, "scipy.io.netcdf_file cross-check");
}

// --------------------------------------------------------------------
// 8. GeoTIFF subset conformance on independently produced files

void criterion_geotiff_conformance() {
  const std::string data = OCEANDC_TEST_DATA_DIR;
  Raster2D base = read_geotiff(data + "/ref_u16_le_strip_none.tif");
  for (const char* variant :
       {"ref_u16_le_strip_deflate.tif", "ref_u16_be_strip_none.tif",
        "ref_u16_le_tiled_none.tif", "ref_u16_be_tiled_deflate.tif"}) {
    Raster2D other = read_geotiff(data + "/" + variant);
    check(other.grid() == base.grid(), std::string(variant) + ": grid");
    for (std::size_t i = 0; i < base.size(); ++i) {
      bool same = is_fill(base.values()[i])
                      ? is_fill(other.values()[i])
                      : base.values()[i] == other.values()[i];
      check(same, std::string(variant) + ": pixel " + std::to_string(i));
    }
  }

  bool rejected = false;
  try {
    read_geotiff(data + "/ref_jpeg.tif");
  } catch (const Error& e) {
    rejected = e.code() == Errc::unsupported_format &&
               std::string(e.what()).find("compression=7") != std::string::npos;
  }
  check(rejected, "JPEG must be rejected as UnsupportedFormat(compression=7)");
}

// --------------------------------------------------------------------
// 9. byte-identical builds through the CLI

void criterion_determinism() {
  testutil::TempDir dir;
  auto fixture = testutil::make_build_fixture(dir, 600);

  auto run_once = [&](const std::string& out) {
    nlohmann::json cfg = fixture.config;
    cfg["output"] = out;  // history already pinned by the fixture
    std::string cfg_path = dir.file("det.json");
    std::string text = cfg.dump();
    detail::write_file(cfg_path,
                       std::vector<std::uint8_t>(text.begin(), text.end()));
    std::string cmd = std::string(OCEANDC_TOOL_PATH) + " build --config " +
                      cfg_path + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    check(WEXITSTATUS(rc) == 0, "oceandc build exited nonzero");
  };
  run_once(dir.file("one.nc"));
  run_once(dir.file("two.nc"));
  check(testutil::files_identical(dir.file("one.nc"), dir.file("two.nc")),
        "outputs differ byte-for-byte");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "index-oracle equivalence (27 products, 200 trials, exact)",
       criterion_index_oracle},
      {2, "equation spot values (NDWI, WRI-2, OSI)", criterion_spot_values},
      {3, "geodesy round trip + independent reference (< 1 mm)",
       criterion_geodesy},
      {4, "resampling histogram x k^2 and 6x6 blocks", criterion_resampling},
      {5, "classification boundary battery (>= 24 cases)",
       criterion_classification},
      {6, "mixed-sensor cube build (3 slices, 512x512 AOI, < 10 s)",
       criterion_mixed_cube},
      {7, "NetCDF round trip + third-party reader", criterion_netcdf_roundtrip},
      {8, "GeoTIFF subset conformance", criterion_geotiff_conformance},
      {9, "byte-identical CLI builds", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      c.run();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failures;
    }
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", verdict.c_str(), c.id,
                c.title, seconds_since(t0), detail.empty() ? "" : " - ",
                detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}

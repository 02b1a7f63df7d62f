#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oceandc/bands.hpp"
#include "oceandc/cube.hpp"
#include "oceandc/detail/bytes.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/timeutil.hpp"

// NetCDF classic 64-bit-offset (CDF-2) serialization of a HyperCube:
// dimensions time/band/y/x, one float data variable "oceandc", CF-1.8
// style attributes. Written from the published format layout; header
// integers are big-endian, variable begins are 8-byte offsets.

namespace oceandc {

namespace nc {

inline constexpr std::int32_t kTagDimension = 0x0A;
inline constexpr std::int32_t kTagVariable = 0x0B;
inline constexpr std::int32_t kTagAttribute = 0x0C;

inline constexpr std::int32_t kChar = 2;
inline constexpr std::int32_t kInt = 4;
inline constexpr std::int32_t kFloat = 5;
inline constexpr std::int32_t kDouble = 6;

inline std::size_t type_size(std::int32_t t) {
  switch (t) {
    case 1: case kChar: return 1;
    case 3: return 2;
    case kInt: case kFloat: return 4;
    case kDouble: return 8;
    default: return 0;
  }
}

struct Attr {
  std::string name;
  std::int32_t type = 0;
  std::string text;             // kChar
  std::vector<double> numbers;  // numeric types, widened

  static Attr chars(std::string name, std::string value) {
    return {std::move(name), kChar, std::move(value), {}};
  }
  static Attr ints(std::string name, std::vector<double> v) {
    return {std::move(name), kInt, {}, std::move(v)};
  }
  static Attr floats(std::string name, std::vector<double> v) {
    return {std::move(name), kFloat, {}, std::move(v)};
  }
  static Attr doubles(std::string name, std::vector<double> v) {
    return {std::move(name), kDouble, {}, std::move(v)};
  }
};

struct Var {
  std::string name;
  std::vector<std::int32_t> dimids;
  std::vector<Attr> attrs;
  std::int32_t type = 0;
  std::uint64_t begin = 0;

  const Attr* find_attr(const std::string& n) const {
    for (const Attr& a : attrs)
      if (a.name == n) return &a;
    return nullptr;
  }
};

struct Dim {
  std::string name;
  std::int32_t length = 0;
};

struct File {
  int version = 2;
  std::vector<Dim> dims;
  std::vector<Attr> gatts;
  std::vector<Var> vars;

  const Var* find_var(const std::string& n) const {
    for (const Var& v : vars)
      if (v.name == n) return &v;
    return nullptr;
  }
  const Attr* find_gatt(const std::string& n) const {
    for (const Attr& a : gatts)
      if (a.name == n) return &a;
    return nullptr;
  }
  int find_dim(const std::string& n) const {
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (dims[i].name == n) return static_cast<int>(i);
    return -1;
  }
};

inline void write_name(detail::ByteWriter& w, const std::string& name) {
  w.u32(static_cast<std::uint32_t>(name.size()));
  w.bytes(name.data(), name.size());
  w.pad_to(4);
}

inline void write_attr(detail::ByteWriter& w, const Attr& a) {
  write_name(w, a.name);
  w.i32(a.type);
  if (a.type == kChar) {
    w.u32(static_cast<std::uint32_t>(a.text.size()));
    w.bytes(a.text.data(), a.text.size());
    w.pad_to(4);
  } else {
    w.u32(static_cast<std::uint32_t>(a.numbers.size()));
    for (double v : a.numbers) {
      switch (a.type) {
        case kInt: w.i32(static_cast<std::int32_t>(v)); break;
        case kFloat: w.f32(static_cast<float>(v)); break;
        case kDouble: w.f64(v); break;
        default:
          throw Error(Errc::write_error, "unsupported attribute type");
      }
    }
    w.pad_to(4);
  }
}

inline void write_attr_list(detail::ByteWriter& w, const std::vector<Attr>& attrs) {
  if (attrs.empty()) {
    w.i32(0);
    w.i32(0);
    return;
  }
  w.i32(kTagAttribute);
  w.u32(static_cast<std::uint32_t>(attrs.size()));
  for (const Attr& a : attrs) write_attr(w, a);
}

// header parsing

inline std::string read_name(const detail::ByteReader& r, std::uint64_t& off) {
  std::uint32_t len = r.u32(off);
  off += 4;
  const std::uint8_t* p = r.raw(off, len);
  std::string s(reinterpret_cast<const char*>(p), len);
  off += (len + 3) / 4 * 4;
  return s;
}

inline Attr read_attr(const detail::ByteReader& r, std::uint64_t& off) {
  Attr a;
  a.name = read_name(r, off);
  a.type = r.i32(off);
  off += 4;
  std::uint32_t n = r.u32(off);
  off += 4;
  std::size_t ts = type_size(a.type);
  if (ts == 0)
    throw Error(Errc::parse_error,
                "bad attribute type at offset " + std::to_string(off - 8));
  if (a.type == kChar) {
    const std::uint8_t* p = r.raw(off, n);
    a.text.assign(reinterpret_cast<const char*>(p), n);
  } else {
    for (std::uint32_t i = 0; i < n; ++i) {
      switch (a.type) {
        case 1: a.numbers.push_back(static_cast<std::int8_t>(r.u8(off + i))); break;
        case 3: a.numbers.push_back(r.i16(off + 2ull * i)); break;
        case kInt: a.numbers.push_back(r.i32(off + 4ull * i)); break;
        case kFloat: a.numbers.push_back(r.f32(off + 4ull * i)); break;
        case kDouble: a.numbers.push_back(r.f64(off + 8ull * i)); break;
      }
    }
  }
  off += (n * ts + 3) / 4 * 4;
  return a;
}

inline std::vector<Attr> read_attr_list(const detail::ByteReader& r,
                                        std::uint64_t& off) {
  std::int32_t tag = r.i32(off);
  std::uint32_t n = r.u32(off + 4);
  off += 8;
  if (tag == 0 && n == 0) return {};
  if (tag != kTagAttribute)
    throw Error(Errc::parse_error,
                "expected attribute list at offset " + std::to_string(off - 8));
  std::vector<Attr> attrs;
  for (std::uint32_t i = 0; i < n; ++i) attrs.push_back(read_attr(r, off));
  return attrs;
}

inline File parse_header(const detail::ByteReader& r) {
  if (r.size() < 4 || r.u8(0) != 'C' || r.u8(1) != 'D' || r.u8(2) != 'F')
    throw Error(Errc::not_netcdf, "magic bytes are not 'CDF'");
  int version = r.u8(3);
  if (version != 1 && version != 2)
    throw Error(Errc::not_netcdf,
                "unsupported NetCDF version byte " + std::to_string(version));
  File f;
  f.version = version;
  std::uint64_t off = 4;
  std::uint32_t numrecs = r.u32(off);
  off += 4;
  if (numrecs != 0)
    throw Error(Errc::schema_error, "record dimensions are not supported");

  std::int32_t dim_tag = r.i32(off);
  std::uint32_t ndims = r.u32(off + 4);
  off += 8;
  if (!(dim_tag == kTagDimension || (dim_tag == 0 && ndims == 0)))
    throw Error(Errc::parse_error,
                "expected dimension list at offset " + std::to_string(off - 8));
  for (std::uint32_t i = 0; i < ndims; ++i) {
    Dim d;
    d.name = read_name(r, off);
    d.length = r.i32(off);
    off += 4;
    if (d.length == 0)
      throw Error(Errc::schema_error, "record dimensions are not supported");
    f.dims.push_back(std::move(d));
  }

  f.gatts = read_attr_list(r, off);

  std::int32_t var_tag = r.i32(off);
  std::uint32_t nvars = r.u32(off + 4);
  off += 8;
  if (!(var_tag == kTagVariable || (var_tag == 0 && nvars == 0)))
    throw Error(Errc::parse_error,
                "expected variable list at offset " + std::to_string(off - 8));
  for (std::uint32_t i = 0; i < nvars; ++i) {
    Var v;
    v.name = read_name(r, off);
    std::uint32_t rank = r.u32(off);
    off += 4;
    for (std::uint32_t d = 0; d < rank; ++d) {
      std::int32_t dimid = r.i32(off);
      off += 4;
      if (dimid < 0 || dimid >= static_cast<std::int32_t>(f.dims.size()))
        throw Error(Errc::parse_error,
                    "bad dimension id at offset " + std::to_string(off - 4));
      v.dimids.push_back(dimid);
    }
    v.attrs = read_attr_list(r, off);
    v.type = r.i32(off);
    off += 4;
    if (type_size(v.type) == 0)
      throw Error(Errc::parse_error,
                  "bad variable type at offset " + std::to_string(off - 4));
    off += 4;  // vsize, recomputable from the shape
    v.begin = version == 1 ? r.u32(off) : r.u64(off);
    off += version == 1 ? 4 : 8;
    f.vars.push_back(std::move(v));
  }
  return f;
}

}  // namespace nc

struct NetcdfWriteOptions {
  // pinned into the global history attribute; empty means "oceandc"
  std::string history = "oceandc";
};

inline void write_netcdf(const HyperCube& cube, const std::string& path,
                         const NetcdfWriteOptions& options = {}) {
  cube.validate();
  const GridSpec& g = cube.grid;
  const std::size_t t_len = cube.times.size();
  const bool geographic = g.epsg == 4326;

  std::string band_table;
  for (int id = 1; id <= kBandCount; ++id) {
    band_table += std::to_string(id) + ":" + band_name(id);
    if (id != kBandCount) band_table += "\n";
  }
  std::string provenance;
  for (std::size_t i = 0; i < cube.slices.size(); ++i) {
    provenance += std::string(sensor_name(cube.slices[i].sensor)) + "\t" +
                  cube.slices[i].source_id;
    if (i + 1 != cube.slices.size()) provenance += "\n";
  }

  std::vector<nc::Dim> dims = {
      {"time", static_cast<std::int32_t>(t_len)},
      {"band", kBandCount},
      {"y", g.height},
      {"x", g.width},
  };

  std::vector<nc::Attr> gatts = {
      nc::Attr::chars("Conventions", "CF-1.8"),
      nc::Attr::chars("title", "Ocean-DC harmonized data cube"),
      nc::Attr::chars("history", options.history),
      nc::Attr::chars("band_table", band_table),
      nc::Attr::chars("provenance", provenance),
  };

  nc::Var time_var{"time",
                   {0},
                   {nc::Attr::chars("standard_name", "time"),
                    nc::Attr::chars("long_name", "time"),
                    nc::Attr::chars("units", "seconds since 1970-01-01T00:00:00Z"),
                    nc::Attr::chars("calendar", "standard")},
                   nc::kDouble};
  nc::Var band_var{"band",
                   {1},
                   {nc::Attr::chars("long_name", "catalogue band identifier")},
                   nc::kInt};
  nc::Var y_var{"y",
                {2},
                {nc::Attr::chars("standard_name", geographic
                                                      ? "latitude"
                                                      : "projection_y_coordinate"),
                 nc::Attr::chars("long_name", "y coordinate of pixel center"),
                 nc::Attr::chars("units", geographic ? "degrees_north" : "m"),
                 nc::Attr::doubles("spacing", {g.pixel_size_y})},
                nc::kDouble};
  nc::Var x_var{"x",
                {3},
                {nc::Attr::chars("standard_name", geographic
                                                      ? "longitude"
                                                      : "projection_x_coordinate"),
                 nc::Attr::chars("long_name", "x coordinate of pixel center"),
                 nc::Attr::chars("units", geographic ? "degrees_east" : "m"),
                 nc::Attr::doubles("spacing", {g.pixel_size_x})},
                nc::kDouble};
  nc::Var crs_var{"crs",
                  {},
                  {nc::Attr::chars("grid_mapping_name",
                                   geographic ? "latitude_longitude"
                                              : "transverse_mercator"),
                   nc::Attr::ints("epsg_code", {static_cast<double>(g.epsg)}),
                   nc::Attr::doubles("geotransform",
                                     {g.origin_x, g.pixel_size_x, g.origin_y,
                                      g.pixel_size_y})},
                  nc::kInt};
  nc::Var data_var{"oceandc",
                   {0, 1, 2, 3},
                   {nc::Attr::chars("long_name",
                                    "harmonized multi-sensor data cube"),
                    nc::Attr::floats("_FillValue",
                                     {std::numeric_limits<double>::quiet_NaN()}),
                    nc::Attr::chars("grid_mapping", "crs")},
                   nc::kFloat};

  std::vector<nc::Var*> vars = {&time_var, &band_var, &y_var,
                                &x_var,    &crs_var,  &data_var};

  auto var_data_size = [&](const nc::Var& v) -> std::uint64_t {
    std::uint64_t n = 1;
    for (std::int32_t d : v.dimids)
      n *= static_cast<std::uint64_t>(dims[static_cast<std::size_t>(d)].length);
    std::uint64_t bytes = n * nc::type_size(v.type);
    return (bytes + 3) / 4 * 4;
  };

  for (nc::Var* v : vars)
    if (var_data_size(*v) > 0xFFFFFFFFull - 3)
      throw Error(Errc::too_large, "variable '" + v->name +
                                       "' exceeds the CDF-2 size limit");

  // serialize the header once with zero begins to learn its length
  auto serialize_header = [&](detail::ByteWriter& w) {
    w.bytes("CDF", 3);
    w.u8(2);
    w.u32(0);  // numrecs
    w.i32(nc::kTagDimension);
    w.u32(static_cast<std::uint32_t>(dims.size()));
    for (const nc::Dim& d : dims) {
      nc::write_name(w, d.name);
      w.i32(d.length);
    }
    nc::write_attr_list(w, gatts);
    w.i32(nc::kTagVariable);
    w.u32(static_cast<std::uint32_t>(vars.size()));
    for (const nc::Var* v : vars) {
      nc::write_name(w, v->name);
      w.u32(static_cast<std::uint32_t>(v->dimids.size()));
      for (std::int32_t d : v->dimids) w.i32(d);
      nc::write_attr_list(w, v->attrs);
      w.i32(v->type);
      w.u32(static_cast<std::uint32_t>(var_data_size(*v)));
      w.u64(v->begin);
    }
  };

  {
    detail::ByteWriter probe(true);
    serialize_header(probe);
    std::uint64_t offset = (probe.size() + 3) / 4 * 4;
    for (nc::Var* v : vars) {
      v->begin = offset;
      offset += var_data_size(*v);
    }
  }

  detail::ByteWriter out(true);
  serialize_header(out);
  out.pad_to(4);

  for (std::size_t t = 0; t < t_len; ++t)
    out.f64(static_cast<double>(cube.times[t]));
  for (int id = 1; id <= kBandCount; ++id) out.i32(id);
  for (int row = 0; row < g.height; ++row)
    out.f64(g.origin_y - (row + 0.5) * g.pixel_size_y);
  for (int col = 0; col < g.width; ++col)
    out.f64(g.origin_x + (col + 0.5) * g.pixel_size_x);
  out.i32(g.epsg);
  out.pad_to(4);
  for (float v : cube.data) out.f32(v);
  out.pad_to(4);

  detail::write_file(path, out.buffer());
}

namespace detail {

inline const nc::Var& require_var(const nc::File& f, const std::string& name,
                                  std::int32_t type,
                                  const std::vector<int>& dimids) {
  const nc::Var* v = f.find_var(name);
  if (!v)
    throw Error(Errc::schema_error, "variable '" + name + "' missing");
  if (v->type != type)
    throw Error(Errc::schema_error, "variable '" + name + "' has wrong type");
  if (v->dimids.size() != dimids.size())
    throw Error(Errc::schema_error, "variable '" + name + "' has wrong rank");
  for (std::size_t i = 0; i < dimids.size(); ++i)
    if (v->dimids[i] != dimids[i])
      throw Error(Errc::schema_error,
                  "variable '" + name + "' has wrong dimensions");
  return *v;
}

}  // namespace detail

inline HyperCube read_netcdf(const std::string& path) {
  auto file = detail::read_file(path);
  detail::ByteReader r(file.data(), file.size(), true);
  nc::File f = nc::parse_header(r);

  int d_time = f.find_dim("time");
  int d_band = f.find_dim("band");
  int d_y = f.find_dim("y");
  int d_x = f.find_dim("x");
  if (d_time < 0 || d_band < 0 || d_y < 0 || d_x < 0)
    throw Error(Errc::schema_error, "missing one of time/band/y/x dimensions");
  if (f.dims[d_band].length != kBandCount)
    throw Error(Errc::schema_error,
                "band dimension is " + std::to_string(f.dims[d_band].length) +
                    ", expected 43");

  const std::size_t t_len = static_cast<std::size_t>(f.dims[d_time].length);
  const int height = f.dims[d_y].length;
  const int width = f.dims[d_x].length;

  const nc::Var& time_var = detail::require_var(f, "time", nc::kDouble, {d_time});
  detail::require_var(f, "band", nc::kInt, {d_band});
  const nc::Var& y_var = detail::require_var(f, "y", nc::kDouble, {d_y});
  const nc::Var& x_var = detail::require_var(f, "x", nc::kDouble, {d_x});
  const nc::Var& crs_var = detail::require_var(f, "crs", nc::kInt, {});
  const nc::Var& data_var =
      detail::require_var(f, "oceandc", nc::kFloat, {d_time, d_band, d_y, d_x});

  HyperCube cube;
  const nc::Attr* gt = crs_var.find_attr("geotransform");
  const nc::Attr* epsg = crs_var.find_attr("epsg_code");
  if (!epsg || epsg->numbers.size() != 1)
    throw Error(Errc::schema_error, "crs variable lacks an epsg_code");
  cube.grid.epsg = static_cast<int>(epsg->numbers[0]);
  if (gt && gt->numbers.size() == 4) {
    cube.grid.origin_x = gt->numbers[0];
    cube.grid.pixel_size_x = gt->numbers[1];
    cube.grid.origin_y = gt->numbers[2];
    cube.grid.pixel_size_y = gt->numbers[3];
  } else {
    // fall back to coordinate spacing for files from other producers
    const nc::Attr* sx = x_var.find_attr("spacing");
    const nc::Attr* sy = y_var.find_attr("spacing");
    if (!sx || !sy || sx->numbers.empty() || sy->numbers.empty())
      throw Error(Errc::schema_error, "no geotransform or spacing attributes");
    cube.grid.pixel_size_x = sx->numbers[0];
    cube.grid.pixel_size_y = sy->numbers[0];
    cube.grid.origin_x = r.f64(x_var.begin) - cube.grid.pixel_size_x / 2;
    cube.grid.origin_y = r.f64(y_var.begin) + cube.grid.pixel_size_y / 2;
  }
  cube.grid.width = width;
  cube.grid.height = height;

  for (std::size_t t = 0; t < t_len; ++t)
    cube.times.push_back(
        static_cast<std::int64_t>(r.f64(time_var.begin + 8 * t)));

  // per-slice provenance: "sensor<TAB>source_id" lines
  cube.slices.resize(t_len);
  if (const nc::Attr* prov = f.find_gatt("provenance")) {
    std::size_t t = 0, pos = 0;
    const std::string& text = prov->text;
    while (t < t_len && pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string::npos) eol = text.size();
      std::string line = text.substr(pos, eol - pos);
      std::size_t tab = line.find('\t');
      if (tab != std::string::npos) {
        cube.slices[t].sensor = sensor_from_name(line.substr(0, tab));
        cube.slices[t].source_id = line.substr(tab + 1);
      }
      ++t;
      pos = eol + 1;
    }
  }

  const std::size_t n =
      t_len * static_cast<std::size_t>(kBandCount) * cube.grid.pixel_count();
  r.require(data_var.begin, n * 4);
  cube.data.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    cube.data[i] = r.f32(data_var.begin + 4 * i);

  cube.validate();
  return cube;
}

}  // namespace oceandc

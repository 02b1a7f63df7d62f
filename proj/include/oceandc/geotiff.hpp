#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <zlib.h>

#include "oceandc/detail/bytes.hpp"
#include "oceandc/errors.hpp"
#include "oceandc/raster.hpp"

// Single-band GeoTIFF subset: baseline TIFF 6.0, little- or big-endian,
// strip or tile layout, no compression or DEFLATE, samples u8/u16/i16/f32,
// ModelPixelScale + one ModelTiepoint, EPSG from the geo-key directory.

namespace oceandc {

enum class TiffLayout { Strips, Tiles };
enum class TiffCompression { None, Deflate };
enum class TiffSampleFormat { U8, U16, I16, F32 };

struct GeoTiffInfo {
  int width = 0;
  int height = 0;
  TiffSampleFormat sample_format = TiffSampleFormat::F32;
  TiffLayout layout = TiffLayout::Strips;
  TiffCompression compression = TiffCompression::None;
  double pixel_size_x = 0;
  double pixel_size_y = 0;
  double origin_x = 0;
  double origin_y = 0;
  int epsg = 0;
  std::optional<double> nodata;
  bool big_endian = false;
};

namespace tiff {

inline constexpr std::uint16_t kTagWidth = 256;
inline constexpr std::uint16_t kTagHeight = 257;
inline constexpr std::uint16_t kTagBitsPerSample = 258;
inline constexpr std::uint16_t kTagCompression = 259;
inline constexpr std::uint16_t kTagPhotometric = 262;
inline constexpr std::uint16_t kTagStripOffsets = 273;
inline constexpr std::uint16_t kTagSamplesPerPixel = 277;
inline constexpr std::uint16_t kTagRowsPerStrip = 278;
inline constexpr std::uint16_t kTagStripByteCounts = 279;
inline constexpr std::uint16_t kTagPlanarConfig = 284;
inline constexpr std::uint16_t kTagPredictor = 317;
inline constexpr std::uint16_t kTagTileWidth = 322;
inline constexpr std::uint16_t kTagTileLength = 323;
inline constexpr std::uint16_t kTagTileOffsets = 324;
inline constexpr std::uint16_t kTagTileByteCounts = 325;
inline constexpr std::uint16_t kTagSampleFormat = 339;
inline constexpr std::uint16_t kTagModelPixelScale = 33550;
inline constexpr std::uint16_t kTagModelTiepoint = 33922;
inline constexpr std::uint16_t kTagGeoKeyDirectory = 34735;
inline constexpr std::uint16_t kTagGdalNodata = 42113;

inline constexpr std::uint16_t kTypeByte = 1;
inline constexpr std::uint16_t kTypeAscii = 2;
inline constexpr std::uint16_t kTypeShort = 3;
inline constexpr std::uint16_t kTypeLong = 4;
inline constexpr std::uint16_t kTypeRational = 5;
inline constexpr std::uint16_t kTypeFloat = 11;
inline constexpr std::uint16_t kTypeDouble = 12;

inline std::size_t type_size(std::uint16_t type) {
  switch (type) {
    case kTypeByte: case kTypeAscii: return 1;
    case kTypeShort: return 2;
    case kTypeLong: case kTypeFloat: return 4;
    case kTypeRational: case kTypeDouble: return 8;
    case 6: return 1;   // SBYTE
    case 7: return 1;   // UNDEFINED
    case 8: return 2;   // SSHORT
    case 9: return 4;   // SLONG
    case 10: return 8;  // SRATIONAL
    default: return 0;
  }
}

struct Entry {
  std::uint16_t type = 0;
  std::uint32_t count = 0;
  std::uint64_t data_offset = 0;  // absolute offset of the value bytes
};

struct Directory {
  std::map<std::uint16_t, Entry> entries;

  const Entry* find(std::uint16_t tag) const {
    auto it = entries.find(tag);
    return it == entries.end() ? nullptr : &it->second;
  }
};

inline Directory parse_ifd(const detail::ByteReader& r, std::uint64_t ifd_off) {
  Directory dir;
  std::uint16_t n = r.u16(ifd_off);
  for (std::uint16_t i = 0; i < n; ++i) {
    std::uint64_t e = ifd_off + 2 + 12ull * i;
    Entry entry;
    std::uint16_t tag = r.u16(e);
    entry.type = r.u16(e + 2);
    entry.count = r.u32(e + 4);
    std::size_t ts = type_size(entry.type);
    if (ts == 0)
      throw Error(Errc::parse_error, "unknown field type " +
                                         std::to_string(entry.type) +
                                         " at offset " + std::to_string(e));
    std::uint64_t total = ts * static_cast<std::uint64_t>(entry.count);
    entry.data_offset = total <= 4 ? e + 8 : r.u32(e + 8);
    r.require(entry.data_offset, total);
    dir.entries[tag] = entry;
  }
  return dir;
}

inline std::vector<std::uint32_t> read_u32s(const detail::ByteReader& r,
                                            const Entry& e) {
  std::vector<std::uint32_t> out;
  out.reserve(e.count);
  for (std::uint32_t i = 0; i < e.count; ++i) {
    switch (e.type) {
      case kTypeByte: out.push_back(r.u8(e.data_offset + i)); break;
      case kTypeShort: out.push_back(r.u16(e.data_offset + 2ull * i)); break;
      case kTypeLong: out.push_back(r.u32(e.data_offset + 4ull * i)); break;
      default:
        throw Error(Errc::parse_error, "unexpected field type " +
                                           std::to_string(e.type) +
                                           " for integer tag");
    }
  }
  return out;
}

inline std::uint32_t read_u32_scalar(const detail::ByteReader& r,
                                     const Entry& e) {
  auto v = read_u32s(r, e);
  if (v.empty())
    throw Error(Errc::parse_error, "empty integer tag value");
  return v[0];
}

inline std::vector<double> read_doubles(const detail::ByteReader& r,
                                        const Entry& e) {
  std::vector<double> out;
  out.reserve(e.count);
  for (std::uint32_t i = 0; i < e.count; ++i) {
    switch (e.type) {
      case kTypeShort: out.push_back(r.u16(e.data_offset + 2ull * i)); break;
      case kTypeLong: out.push_back(r.u32(e.data_offset + 4ull * i)); break;
      case kTypeFloat: out.push_back(r.f32(e.data_offset + 4ull * i)); break;
      case kTypeDouble: out.push_back(r.f64(e.data_offset + 8ull * i)); break;
      case kTypeRational: {
        double num = r.u32(e.data_offset + 8ull * i);
        double den = r.u32(e.data_offset + 8ull * i + 4);
        out.push_back(den == 0 ? 0.0 : num / den);
        break;
      }
      default:
        throw Error(Errc::parse_error, "unexpected field type " +
                                           std::to_string(e.type) +
                                           " for real-valued tag");
    }
  }
  return out;
}

inline std::string read_ascii(const detail::ByteReader& r, const Entry& e) {
  const std::uint8_t* p = r.raw(e.data_offset, e.count);
  std::string s(reinterpret_cast<const char*>(p), e.count);
  while (!s.empty() && (s.back() == '\0' || s.back() == ' ')) s.pop_back();
  return s;
}

inline std::vector<std::uint8_t> inflate(const std::uint8_t* src,
                                         std::size_t src_len,
                                         std::size_t expected) {
  std::vector<std::uint8_t> out(expected);
  uLongf dst_len = static_cast<uLongf>(expected);
  int rc = ::uncompress(out.data(), &dst_len, src,
                        static_cast<uLong>(src_len));
  if (rc != Z_OK || dst_len != expected)
    throw Error(Errc::parse_error, "DEFLATE stream did not decode to " +
                                       std::to_string(expected) + " bytes");
  return out;
}

inline std::vector<std::uint8_t> deflate(const std::uint8_t* src,
                                         std::size_t src_len) {
  uLongf bound = compressBound(static_cast<uLong>(src_len));
  std::vector<std::uint8_t> out(bound);
  int rc = ::compress2(out.data(), &bound, src, static_cast<uLong>(src_len), 6);
  if (rc != Z_OK)
    throw Error(Errc::write_error, "DEFLATE compression failed");
  out.resize(bound);
  return out;
}

}  // namespace tiff

namespace detail {

inline std::size_t tiff_sample_size(TiffSampleFormat f) {
  switch (f) {
    case TiffSampleFormat::U8: return 1;
    case TiffSampleFormat::U16:
    case TiffSampleFormat::I16: return 2;
    case TiffSampleFormat::F32: return 4;
  }
  return 0;
}

// Decodes one chunk (strip or full tile) of raw sample bytes to floats.
inline void decode_samples(const std::uint8_t* p, std::size_t n,
                           TiffSampleFormat fmt, bool big, float* out) {
  ByteReader r(p, n * tiff_sample_size(fmt), big);
  for (std::size_t i = 0; i < n; ++i) {
    switch (fmt) {
      case TiffSampleFormat::U8: out[i] = r.u8(i); break;
      case TiffSampleFormat::U16: out[i] = r.u16(2 * i); break;
      case TiffSampleFormat::I16: out[i] = r.i16(2 * i); break;
      case TiffSampleFormat::F32: out[i] = r.f32(4 * i); break;
    }
  }
}

}  // namespace detail

inline GeoTiffInfo parse_geotiff_header(const detail::ByteReader& r,
                                        tiff::Directory& dir) {
  GeoTiffInfo info;
  info.big_endian = r.big_endian();

  auto require_tag = [&](std::uint16_t tag, const char* what) -> const tiff::Entry& {
    const tiff::Entry* e = dir.find(tag);
    if (!e) throw Error(Errc::parse_error, std::string("missing required tag ") + what);
    return *e;
  };

  info.width = static_cast<int>(tiff::read_u32_scalar(r, require_tag(tiff::kTagWidth, "ImageWidth")));
  info.height = static_cast<int>(tiff::read_u32_scalar(r, require_tag(tiff::kTagHeight, "ImageLength")));
  if (info.width < 1 || info.height < 1 ||
      static_cast<std::uint64_t>(info.width) * info.height > (1ull << 28))
    throw Error(Errc::parse_error, "implausible image dimensions");

  if (const tiff::Entry* e = dir.find(tiff::kTagSamplesPerPixel)) {
    std::uint32_t spp = tiff::read_u32_scalar(r, *e);
    if (spp != 1)
      throw Error(Errc::unsupported_format,
                  "samples_per_pixel=" + std::to_string(spp));
  }
  if (const tiff::Entry* e = dir.find(tiff::kTagPlanarConfig)) {
    std::uint32_t pc = tiff::read_u32_scalar(r, *e);
    if (pc != 1)
      throw Error(Errc::unsupported_format, "planar_configuration=" + std::to_string(pc));
  }
  if (const tiff::Entry* e = dir.find(tiff::kTagPredictor)) {
    std::uint32_t p = tiff::read_u32_scalar(r, *e);
    if (p != 1)
      throw Error(Errc::unsupported_format, "predictor=" + std::to_string(p));
  }

  std::uint32_t compression = 1;
  if (const tiff::Entry* e = dir.find(tiff::kTagCompression))
    compression = tiff::read_u32_scalar(r, *e);
  if (compression == 1) {
    info.compression = TiffCompression::None;
  } else if (compression == 8 || compression == 32946) {
    info.compression = TiffCompression::Deflate;
  } else {
    throw Error(Errc::unsupported_format,
                "compression=" + std::to_string(compression));
  }

  std::uint32_t bits = 1;
  if (const tiff::Entry* e = dir.find(tiff::kTagBitsPerSample))
    bits = tiff::read_u32_scalar(r, *e);
  std::uint32_t sf = 1;
  if (const tiff::Entry* e = dir.find(tiff::kTagSampleFormat))
    sf = tiff::read_u32_scalar(r, *e);
  if (bits == 8 && sf == 1) {
    info.sample_format = TiffSampleFormat::U8;
  } else if (bits == 16 && sf == 1) {
    info.sample_format = TiffSampleFormat::U16;
  } else if (bits == 16 && sf == 2) {
    info.sample_format = TiffSampleFormat::I16;
  } else if (bits == 32 && sf == 3) {
    info.sample_format = TiffSampleFormat::F32;
  } else {
    throw Error(Errc::unsupported_format, "bits_per_sample=" +
                                              std::to_string(bits) +
                                              " sample_format=" + std::to_string(sf));
  }

  bool has_strips = dir.find(tiff::kTagStripOffsets) != nullptr;
  bool has_tiles = dir.find(tiff::kTagTileOffsets) != nullptr;
  if (has_strips == has_tiles)
    throw Error(Errc::parse_error,
                has_strips ? "both strip and tile layout present"
                           : "no strip or tile offsets present");
  info.layout = has_tiles ? TiffLayout::Tiles : TiffLayout::Strips;

  // georeferencing
  const tiff::Entry* scale = dir.find(tiff::kTagModelPixelScale);
  const tiff::Entry* tie = dir.find(tiff::kTagModelTiepoint);
  if (!scale || !tie)
    throw Error(Errc::missing_georeference,
                "ModelPixelScale and ModelTiepoint are required");
  auto sc = tiff::read_doubles(r, *scale);
  auto tp = tiff::read_doubles(r, *tie);
  if (sc.size() < 2 || tp.size() < 6)
    throw Error(Errc::missing_georeference, "malformed geotransform tags");
  if (!(sc[0] > 0) || !(sc[1] > 0))
    throw Error(Errc::missing_georeference, "non-positive pixel scale");
  info.pixel_size_x = sc[0];
  info.pixel_size_y = sc[1];
  // tiepoint maps raster (i, j) to model (X, Y); origin is the outer
  // corner of pixel (0, 0)
  info.origin_x = tp[3] - tp[0] * sc[0];
  info.origin_y = tp[4] + tp[1] * sc[1];

  const tiff::Entry* geokeys = dir.find(tiff::kTagGeoKeyDirectory);
  if (!geokeys)
    throw Error(Errc::missing_georeference, "GeoKeyDirectory missing");
  auto keys = tiff::read_u32s(r, *geokeys);
  if (keys.size() < 4 || keys.size() < 4 + 4ull * keys[3])
    throw Error(Errc::parse_error, "malformed GeoKeyDirectory");
  int model_type = 0, projected_cs = 0, geographic_cs = 0, raster_type = 0;
  for (std::uint32_t k = 0; k < keys[3]; ++k) {
    std::uint32_t id = keys[4 + 4 * k];
    std::uint32_t loc = keys[4 + 4 * k + 1];
    std::uint32_t value = keys[4 + 4 * k + 3];
    if (loc != 0) continue;  // value stored in another tag; none of ours are
    if (id == 1024) model_type = static_cast<int>(value);
    if (id == 1025) raster_type = static_cast<int>(value);
    if (id == 2048) geographic_cs = static_cast<int>(value);
    if (id == 3072) projected_cs = static_cast<int>(value);
  }
  if (raster_type == 2)
    throw Error(Errc::unsupported_format, "GTRasterType=PixelIsPoint");
  if (model_type == 1 || (model_type == 0 && projected_cs != 0)) {
    info.epsg = projected_cs;
  } else if (model_type == 2 || (model_type == 0 && geographic_cs != 0)) {
    info.epsg = geographic_cs;
  }
  if (info.epsg == 0 || info.epsg == 32767)
    throw Error(Errc::missing_georeference, "no usable EPSG code in geo-keys");

  if (const tiff::Entry* e = dir.find(tiff::kTagGdalNodata)) {
    std::string s = tiff::read_ascii(r, *e);
    try {
      info.nodata = std::stod(s);
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "unparseable GDAL_NODATA '" + s + "'");
    }
  }
  return info;
}

inline Raster2D read_geotiff(const std::string& path) {
  auto file = detail::read_file(path);
  if (file.size() < 8) throw Error(Errc::parse_error, "truncated input at offset 0");
  bool big;
  if (file[0] == 'I' && file[1] == 'I') {
    big = false;
  } else if (file[0] == 'M' && file[1] == 'M') {
    big = true;
  } else {
    throw Error(Errc::parse_error, "not a TIFF file (bad byte-order mark)");
  }
  detail::ByteReader r(file.data(), file.size(), big);
  std::uint16_t magic = r.u16(2);
  if (magic == 43) throw Error(Errc::unsupported_format, "BigTIFF");
  if (magic != 42) throw Error(Errc::parse_error, "not a TIFF file (bad magic)");

  tiff::Directory dir = tiff::parse_ifd(r, r.u32(4));
  GeoTiffInfo info = parse_geotiff_header(r, dir);

  const std::size_t ssize = detail::tiff_sample_size(info.sample_format);
  const int w = info.width, h = info.height;
  std::vector<float> values(static_cast<std::size_t>(w) * h);

  auto chunk_bytes = [&](std::uint64_t off, std::uint64_t len,
                         std::size_t expected,
                         std::vector<std::uint8_t>& decompressed)
      -> const std::uint8_t* {
    const std::uint8_t* raw = r.raw(off, len);
    if (info.compression == TiffCompression::Deflate) {
      decompressed = tiff::inflate(raw, len, expected);
      return decompressed.data();
    }
    if (len != expected)
      throw Error(Errc::parse_error,
                  "chunk at offset " + std::to_string(off) + " has " +
                      std::to_string(len) + " bytes, expected " +
                      std::to_string(expected));
    return raw;
  };

  if (info.layout == TiffLayout::Strips) {
    std::uint32_t rps = h;
    if (const tiff::Entry* e = dir.find(tiff::kTagRowsPerStrip)) {
      rps = tiff::read_u32_scalar(r, *e);
      if (rps == 0) throw Error(Errc::parse_error, "RowsPerStrip is zero");
      rps = std::min<std::uint32_t>(rps, h);
    }
    auto offsets = tiff::read_u32s(r, *dir.find(tiff::kTagStripOffsets));
    const tiff::Entry* counts_e = dir.find(tiff::kTagStripByteCounts);
    if (!counts_e) throw Error(Errc::parse_error, "StripByteCounts missing");
    auto counts = tiff::read_u32s(r, *counts_e);
    std::size_t nstrips = (h + rps - 1) / rps;
    if (offsets.size() != nstrips || counts.size() != nstrips)
      throw Error(Errc::parse_error, "strip table size mismatch");
    std::vector<std::uint8_t> scratch;
    for (std::size_t s = 0; s < nstrips; ++s) {
      int row0 = static_cast<int>(s * rps);
      int nrows = std::min<int>(rps, h - row0);
      std::size_t n = static_cast<std::size_t>(nrows) * w;
      const std::uint8_t* p = chunk_bytes(offsets[s], counts[s], n * ssize, scratch);
      detail::decode_samples(p, n, info.sample_format, big,
                             values.data() + static_cast<std::size_t>(row0) * w);
    }
  } else {
    auto tw = tiff::read_u32_scalar(r, *dir.find(tiff::kTagTileWidth));
    auto th_e = dir.find(tiff::kTagTileLength);
    if (!th_e) throw Error(Errc::parse_error, "TileLength missing");
    auto th = tiff::read_u32_scalar(r, *th_e);
    if (tw == 0 || th == 0) throw Error(Errc::parse_error, "zero tile dimensions");
    auto offsets = tiff::read_u32s(r, *dir.find(tiff::kTagTileOffsets));
    const tiff::Entry* counts_e = dir.find(tiff::kTagTileByteCounts);
    if (!counts_e) throw Error(Errc::parse_error, "TileByteCounts missing");
    auto counts = tiff::read_u32s(r, *counts_e);
    std::size_t across = (w + tw - 1) / tw;
    std::size_t down = (h + th - 1) / th;
    if (offsets.size() != across * down || counts.size() != across * down)
      throw Error(Errc::parse_error, "tile table size mismatch");
    std::vector<float> tilebuf(static_cast<std::size_t>(tw) * th);
    std::vector<std::uint8_t> scratch;
    for (std::size_t ty = 0; ty < down; ++ty) {
      for (std::size_t tx = 0; tx < across; ++tx) {
        std::size_t t = ty * across + tx;
        std::size_t n = static_cast<std::size_t>(tw) * th;
        const std::uint8_t* p = chunk_bytes(offsets[t], counts[t], n * ssize, scratch);
        detail::decode_samples(p, n, info.sample_format, big, tilebuf.data());
        int col0 = static_cast<int>(tx * tw);
        int row0 = static_cast<int>(ty * th);
        int ncols = std::min<int>(tw, w - col0);
        int nrows = std::min<int>(th, h - row0);
        for (int rr = 0; rr < nrows; ++rr)
          std::copy_n(tilebuf.data() + static_cast<std::size_t>(rr) * tw, ncols,
                      values.data() + static_cast<std::size_t>(row0 + rr) * w + col0);
      }
    }
  }

  if (info.nodata) {
    double nd = *info.nodata;
    if (std::isnan(nd)) {
      // NaN samples are already the fill sentinel
    } else {
      float ndf = static_cast<float>(nd);
      for (float& v : values)
        if (v == ndf) v = kFill;
    }
  }

  GridSpec grid{info.epsg, info.origin_x, info.origin_y,
                info.pixel_size_x, info.pixel_size_y, w, h};
  return Raster2D(grid, std::move(values));
}

inline GeoTiffInfo read_geotiff_info(const std::string& path) {
  auto file = detail::read_file(path);
  if (file.size() < 8) throw Error(Errc::parse_error, "truncated input at offset 0");
  if (!(file[0] == 'I' && file[1] == 'I') && !(file[0] == 'M' && file[1] == 'M'))
    throw Error(Errc::parse_error, "not a TIFF file (bad byte-order mark)");
  detail::ByteReader r(file.data(), file.size(), file[0] == 'M');
  if (r.u16(2) != 42) throw Error(Errc::parse_error, "not a TIFF file (bad magic)");
  tiff::Directory dir = tiff::parse_ifd(r, r.u32(4));
  return parse_geotiff_header(r, dir);
}

struct GeoTiffWriteOptions {
  TiffSampleFormat sample_format = TiffSampleFormat::F32;
  TiffLayout layout = TiffLayout::Strips;
  TiffCompression compression = TiffCompression::None;
  bool big_endian = false;
  int rows_per_strip = 64;
  int tile_size = 64;  // TIFF requires tile dimensions to be multiples of 16
  std::optional<double> nodata;
};

inline void write_geotiff(const Raster2D& raster, const std::string& path,
                          const GeoTiffWriteOptions& opt = {}) {
  const GridSpec& g = raster.grid();
  const std::size_t ssize = detail::tiff_sample_size(opt.sample_format);

  std::optional<double> nodata = opt.nodata;
  if (!nodata && opt.sample_format == TiffSampleFormat::F32)
    nodata = std::numeric_limits<double>::quiet_NaN();

  auto encode = [&](detail::ByteWriter& w, float v) {
    if (is_fill(v)) {
      if (!nodata)
        throw Error(Errc::write_error,
                    "fill pixels need a nodata value for integer formats");
      v = static_cast<float>(*nodata);
    }
    switch (opt.sample_format) {
      case TiffSampleFormat::U8:
        w.u8(static_cast<std::uint8_t>(std::lround(v)));
        break;
      case TiffSampleFormat::U16:
        w.u16(static_cast<std::uint16_t>(std::lround(v)));
        break;
      case TiffSampleFormat::I16:
        w.u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(std::lround(v))));
        break;
      case TiffSampleFormat::F32:
        w.f32(v);
        break;
    }
  };

  detail::ByteWriter out(opt.big_endian);
  out.bytes(opt.big_endian ? "MM" : "II", 2);
  out.u16(42);
  std::size_t ifd_offset_field = out.size();
  out.u32(0);  // patched once the IFD position is known

  // encode pixel chunks
  std::vector<std::uint64_t> chunk_offsets;
  std::vector<std::uint32_t> chunk_counts;
  auto emit_chunk = [&](const std::vector<std::uint8_t>& raw) {
    std::vector<std::uint8_t> payload =
        opt.compression == TiffCompression::Deflate
            ? tiff::deflate(raw.data(), raw.size())
            : raw;
    out.pad_to(2);
    chunk_offsets.push_back(out.size());
    chunk_counts.push_back(static_cast<std::uint32_t>(payload.size()));
    out.bytes(payload.data(), payload.size());
  };

  int rps = 0, tw = 0, th = 0;
  if (opt.layout == TiffLayout::Strips) {
    rps = std::clamp(opt.rows_per_strip, 1, g.height);
    for (int row0 = 0; row0 < g.height; row0 += rps) {
      int nrows = std::min(rps, g.height - row0);
      detail::ByteWriter chunk(opt.big_endian);
      for (int rr = 0; rr < nrows; ++rr)
        for (int c = 0; c < g.width; ++c) encode(chunk, raster.at(row0 + rr, c));
      emit_chunk(chunk.buffer());
    }
  } else {
    tw = th = std::max(16, opt.tile_size - opt.tile_size % 16);
    for (int row0 = 0; row0 < g.height; row0 += th) {
      for (int col0 = 0; col0 < g.width; col0 += tw) {
        detail::ByteWriter chunk(opt.big_endian);
        for (int rr = 0; rr < th; ++rr) {
          for (int cc = 0; cc < tw; ++cc) {
            int row = row0 + rr, col = col0 + cc;
            bool inside = row < g.height && col < g.width;
            encode(chunk, inside ? raster.at(row, col) : (nodata ? static_cast<float>(*nodata) : 0.0f));
          }
        }
        emit_chunk(chunk.buffer());
      }
    }
  }

  // IFD entries; value blobs too large for the inline field go after the
  // pixel data
  struct PendingEntry {
    std::uint16_t type;
    std::uint32_t count;
    std::vector<std::uint8_t> value;  // serialized in file byte order
  };
  std::map<std::uint16_t, PendingEntry> entries;

  auto add_shorts = [&](std::uint16_t tag, const std::vector<std::uint16_t>& v) {
    detail::ByteWriter w(opt.big_endian);
    for (auto x : v) w.u16(x);
    entries[tag] = {tiff::kTypeShort, static_cast<std::uint32_t>(v.size()), std::move(w.buffer())};
  };
  auto add_longs = [&](std::uint16_t tag, const std::vector<std::uint32_t>& v) {
    detail::ByteWriter w(opt.big_endian);
    for (auto x : v) w.u32(x);
    entries[tag] = {tiff::kTypeLong, static_cast<std::uint32_t>(v.size()), std::move(w.buffer())};
  };
  auto add_doubles = [&](std::uint16_t tag, const std::vector<double>& v) {
    detail::ByteWriter w(opt.big_endian);
    for (auto x : v) w.f64(x);
    entries[tag] = {tiff::kTypeDouble, static_cast<std::uint32_t>(v.size()), std::move(w.buffer())};
  };
  auto add_ascii = [&](std::uint16_t tag, const std::string& s) {
    std::vector<std::uint8_t> v(s.begin(), s.end());
    v.push_back('\0');
    entries[tag] = {tiff::kTypeAscii, static_cast<std::uint32_t>(v.size()), std::move(v)};
  };

  add_longs(tiff::kTagWidth, {static_cast<std::uint32_t>(g.width)});
  add_longs(tiff::kTagHeight, {static_cast<std::uint32_t>(g.height)});
  add_shorts(tiff::kTagBitsPerSample, {static_cast<std::uint16_t>(ssize * 8)});
  add_shorts(tiff::kTagCompression,
             {static_cast<std::uint16_t>(opt.compression == TiffCompression::Deflate ? 8 : 1)});
  add_shorts(tiff::kTagPhotometric, {1});
  add_shorts(tiff::kTagSamplesPerPixel, {1});
  std::uint16_t sf = opt.sample_format == TiffSampleFormat::F32   ? 3
                     : opt.sample_format == TiffSampleFormat::I16 ? 2
                                                                  : 1;
  add_shorts(tiff::kTagSampleFormat, {sf});

  std::vector<std::uint32_t> off32(chunk_offsets.begin(), chunk_offsets.end());
  if (opt.layout == TiffLayout::Strips) {
    add_longs(tiff::kTagStripOffsets, off32);
    add_longs(tiff::kTagRowsPerStrip, {static_cast<std::uint32_t>(rps)});
    add_longs(tiff::kTagStripByteCounts, chunk_counts);
  } else {
    add_longs(tiff::kTagTileWidth, {static_cast<std::uint32_t>(tw)});
    add_longs(tiff::kTagTileLength, {static_cast<std::uint32_t>(th)});
    add_longs(tiff::kTagTileOffsets, off32);
    add_longs(tiff::kTagTileByteCounts, chunk_counts);
  }

  add_doubles(tiff::kTagModelPixelScale, {g.pixel_size_x, g.pixel_size_y, 0.0});
  add_doubles(tiff::kTagModelTiepoint, {0, 0, 0, g.origin_x, g.origin_y, 0});

  bool geographic = g.epsg == 4326;
  std::vector<std::uint16_t> keys = {1, 1, 0, 3,
                                     1024, 0, 1, static_cast<std::uint16_t>(geographic ? 2 : 1),
                                     1025, 0, 1, 1,
                                     static_cast<std::uint16_t>(geographic ? 2048 : 3072),
                                     0, 1, static_cast<std::uint16_t>(g.epsg)};
  add_shorts(tiff::kTagGeoKeyDirectory, keys);

  if (nodata) {
    char buf[48];
    if (std::isnan(*nodata)) {
      std::snprintf(buf, sizeof buf, "nan");
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", *nodata);
    }
    add_ascii(tiff::kTagGdalNodata, buf);
  }

  // out-of-line values first, then the IFD itself
  std::map<std::uint16_t, std::uint32_t> value_offsets;
  for (auto& [tag, e] : entries) {
    if (e.value.size() > 4) {
      out.pad_to(2);
      value_offsets[tag] = static_cast<std::uint32_t>(out.size());
      out.bytes(e.value.data(), e.value.size());
    }
  }
  out.pad_to(2);
  std::uint32_t ifd_pos = static_cast<std::uint32_t>(out.size());
  out.u16(static_cast<std::uint16_t>(entries.size()));
  for (auto& [tag, e] : entries) {
    out.u16(tag);
    out.u16(e.type);
    out.u32(e.count);
    if (e.value.size() > 4) {
      out.u32(value_offsets[tag]);
    } else {
      std::uint8_t inline_val[4] = {0, 0, 0, 0};
      std::copy(e.value.begin(), e.value.end(), inline_val);
      out.bytes(inline_val, 4);
    }
  }
  out.u32(0);  // no next IFD
  out.patch_u32(ifd_offset_field, ifd_pos);

  detail::write_file(path, out.buffer());
}

}  // namespace oceandc

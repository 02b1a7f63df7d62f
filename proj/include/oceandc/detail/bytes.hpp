#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "oceandc/errors.hpp"

namespace oceandc::detail {

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::io_error, "read failure on '" + path + "'");
  return data;
}

inline void write_file(const std::string& path,
                       const std::vector<std::uint8_t>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::write_error, "cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(Errc::write_error, "write failure on '" + path + "'");
}

// Bounded cursor over a byte buffer. Every read is range-checked and
// failures report the offending offset.
class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size, bool big_endian)
      : data_(data), size_(size), big_(big_endian) {}

  std::size_t size() const { return size_; }
  bool big_endian() const { return big_; }
  void set_big_endian(bool b) { big_ = b; }

  void require(std::uint64_t offset, std::uint64_t count) const {
    if (offset > size_ || count > size_ - offset)
      throw Error(Errc::parse_error,
                  "truncated input at offset " + std::to_string(offset));
  }

  std::uint8_t u8(std::uint64_t off) const {
    require(off, 1);
    return data_[off];
  }

  std::uint16_t u16(std::uint64_t off) const {
    require(off, 2);
    const std::uint8_t* p = data_ + off;
    return big_ ? static_cast<std::uint16_t>(p[0] << 8 | p[1])
                : static_cast<std::uint16_t>(p[1] << 8 | p[0]);
  }

  std::uint32_t u32(std::uint64_t off) const {
    require(off, 4);
    const std::uint8_t* p = data_ + off;
    return big_ ? (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
                      (std::uint32_t(p[2]) << 8) | p[3]
                : (std::uint32_t(p[3]) << 24) | (std::uint32_t(p[2]) << 16) |
                      (std::uint32_t(p[1]) << 8) | p[0];
  }

  std::uint64_t u64(std::uint64_t off) const {
    std::uint64_t hi, lo;
    if (big_) {
      hi = u32(off);
      lo = u32(off + 4);
    } else {
      lo = u32(off);
      hi = u32(off + 4);
    }
    return (hi << 32) | lo;
  }

  std::int16_t i16(std::uint64_t off) const {
    return static_cast<std::int16_t>(u16(off));
  }
  std::int32_t i32(std::uint64_t off) const {
    return static_cast<std::int32_t>(u32(off));
  }

  float f32(std::uint64_t off) const {
    return std::bit_cast<float>(u32(off));
  }
  double f64(std::uint64_t off) const {
    return std::bit_cast<double>(u64(off));
  }

  const std::uint8_t* raw(std::uint64_t off, std::uint64_t count) const {
    require(off, count);
    return data_ + off;
  }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  bool big_;
};

// Append-only builder with explicit endianness.
class ByteWriter {
 public:
  explicit ByteWriter(bool big_endian) : big_(big_endian) {}

  std::vector<std::uint8_t>& buffer() { return buf_; }
  std::size_t size() const { return buf_.size(); }
  bool big_endian() const { return big_; }

  void u8(std::uint8_t v) { buf_.push_back(v); }

  void u16(std::uint16_t v) {
    if (big_) {
      buf_.push_back(v >> 8);
      buf_.push_back(v & 0xff);
    } else {
      buf_.push_back(v & 0xff);
      buf_.push_back(v >> 8);
    }
  }

  void u32(std::uint32_t v) {
    if (big_) {
      for (int s = 24; s >= 0; s -= 8) buf_.push_back((v >> s) & 0xff);
    } else {
      for (int s = 0; s <= 24; s += 8) buf_.push_back((v >> s) & 0xff);
    }
  }

  void u64(std::uint64_t v) {
    if (big_) {
      u32(static_cast<std::uint32_t>(v >> 32));
      u32(static_cast<std::uint32_t>(v));
    } else {
      u32(static_cast<std::uint32_t>(v));
      u32(static_cast<std::uint32_t>(v >> 32));
    }
  }

  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }

  void patch_u32(std::size_t offset, std::uint32_t v) {
    std::uint8_t tmp[4];
    if (big_) {
      tmp[0] = v >> 24; tmp[1] = v >> 16; tmp[2] = v >> 8; tmp[3] = v;
    } else {
      tmp[3] = v >> 24; tmp[2] = v >> 16; tmp[1] = v >> 8; tmp[0] = v;
    }
    std::memcpy(buf_.data() + offset, tmp, 4);
  }

  void pad_to(std::size_t alignment, std::uint8_t fill = 0) {
    while (buf_.size() % alignment) buf_.push_back(fill);
  }

 private:
  std::vector<std::uint8_t> buf_;
  bool big_;
};

}  // namespace oceandc::detail

#ifndef MCWL_CORE_WIRE_HPP
#define MCWL_CORE_WIRE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "types.hpp"

namespace mcwl::wire {

// Little-endian byte packing shared by the volume and decomposition
// containers. Readers track the byte offset so format errors can name
// the exact location.

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) {
    buf_.push_back(std::uint8_t(v & 0xFF));
    buf_.push_back(std::uint8_t(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(std::uint8_t((v >> (8 * i)) & 0xFF));
  }
  void i8(std::int8_t v) { buf_.push_back(std::uint8_t(v)); }
  void i32(std::int32_t v) { u32(std::uint32_t(v)); }
  void bytes(const std::vector<std::uint8_t>& b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

  const std::vector<std::uint8_t>& buffer() const { return buf_; }
  std::size_t size() const { return buf_.size(); }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size, std::string source)
      : data_(data), size_(size), source_(std::move(source)) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = std::uint16_t(data_[pos_]) | std::uint16_t(data_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::int8_t i8() { return std::int8_t(u8()); }
  std::int32_t i32() { return std::int32_t(u32()); }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(source_ + ": " + what + " at byte offset " + std::to_string(pos_));
  }
  [[noreturn]] void fail_at(const std::string& what, std::size_t offset) const {
    throw FormatError(source_ + ": " + what + " at byte offset " + std::to_string(offset));
  }

  void expect_exhausted() const {
    if (pos_ != size_) fail("trailing bytes");
  }

 private:
  void need(std::size_t n) const {
    if (size_ - pos_ < n) fail("truncated payload");
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::string source_;
};

// Whole-file helpers.
std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace mcwl::wire

#endif

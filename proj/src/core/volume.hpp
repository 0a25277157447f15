#ifndef MCWL_CORE_VOLUME_HPP
#define MCWL_CORE_VOLUME_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "types.hpp"

namespace mcwl {

// 3-D array of unsigned voxels, slice-major then row-major. Immutable
// after construction and safe to share across threads.
class Volume {
 public:
  Volume(std::uint32_t slices, std::uint32_t rows, std::uint32_t cols, std::uint8_t bit_depth,
         std::vector<std::uint16_t> voxels);

  std::uint32_t slices() const { return slices_; }
  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::uint8_t bit_depth() const { return bit_depth_; }
  std::uint32_t max_intensity() const { return (1u << bit_depth_) - 1u; }

  std::uint16_t at(std::uint32_t k, std::uint32_t m, std::uint32_t n) const {
    return voxels_[(std::size_t(k) * rows_ + m) * cols_ + n];
  }
  const std::vector<std::uint16_t>& voxels() const { return voxels_; }

  // Slice k widened to the signed working representation.
  Slice slice(std::uint32_t k) const;

  friend bool operator==(const Volume&, const Volume&) = default;

 private:
  std::uint32_t slices_, rows_, cols_;
  std::uint8_t bit_depth_;
  std::vector<std::uint16_t> voxels_;
};

// "MCWV" container: magic, version u8=1, bit_depth u8, reserved u16
// (bit 0 flags a sub-minimum slice count, otherwise 0), K/M/N u32 LE,
// voxels u16 LE slice-major.
Volume load_volume(const std::string& path);
void save_volume(const Volume& volume, const std::string& path);

// In-memory codecs behind the file API, used for byte-level tests.
Volume decode_volume(const std::vector<std::uint8_t>& bytes, const std::string& source);
std::vector<std::uint8_t> encode_volume(const Volume& volume);

}  // namespace mcwl

#endif

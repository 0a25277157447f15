#include "volume.hpp"

#include "wire.hpp"

namespace mcwl {

namespace {

constexpr char kMagic[4] = {'M', 'C', 'W', 'V'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint16_t kFlagShortVolume = 0x0001;  // K < 2, not transformable
constexpr std::uint64_t kMaxVoxels = 1ull << 28;

void check_dims(std::uint32_t slices, std::uint32_t rows, std::uint32_t cols,
                std::uint8_t bit_depth) {
  if (slices < 1 || rows < 1 || cols < 1)
    throw ArgumentError("volume dimensions must be positive");
  if (bit_depth < 8 || bit_depth > 16)
    throw ArgumentError("bit depth must be in [8, 16], got " + std::to_string(bit_depth));
  if (std::uint64_t(slices) * rows * cols > kMaxVoxels)
    throw ArgumentError("volume exceeds the supported size");
}

}  // namespace

Slice::Slice(std::uint32_t rows, std::uint32_t cols, std::vector<std::int32_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != std::size_t(rows) * cols)
    throw ArgumentError("slice data size does not match dimensions");
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Zero: return "zero";
    case Method::Block: return "block";
    case Method::BlockFill: return "block+fill";
    case Method::Mesh: return "mesh";
  }
  return "?";
}

bool parse_method(const std::string& text, Method& out) {
  if (text == "zero") out = Method::Zero;
  else if (text == "block") out = Method::Block;
  else if (text == "block-fill" || text == "block+fill") out = Method::BlockFill;
  else if (text == "mesh") out = Method::Mesh;
  else return false;
  return true;
}

Volume::Volume(std::uint32_t slices, std::uint32_t rows, std::uint32_t cols,
               std::uint8_t bit_depth, std::vector<std::uint16_t> voxels)
    : slices_(slices), rows_(rows), cols_(cols), bit_depth_(bit_depth),
      voxels_(std::move(voxels)) {
  check_dims(slices, rows, cols, bit_depth);
  if (voxels_.size() != std::size_t(slices) * rows * cols)
    throw ArgumentError("voxel count does not match dimensions");
  const std::uint32_t cap = max_intensity();
  for (std::size_t i = 0; i < voxels_.size(); ++i) {
    if (voxels_[i] > cap)
      throw ArgumentError("voxel " + std::to_string(i) + " value " +
                          std::to_string(voxels_[i]) + " exceeds 2^" +
                          std::to_string(bit_depth) + "-1");
  }
}

Slice Volume::slice(std::uint32_t k) const {
  Slice s(rows_, cols_);
  const std::uint16_t* src = voxels_.data() + std::size_t(k) * rows_ * cols_;
  for (std::size_t i = 0; i < s.size(); ++i) s.data()[i] = src[i];
  return s;
}

std::vector<std::uint8_t> encode_volume(const Volume& volume) {
  wire::Writer w;
  for (char c : kMagic) w.u8(std::uint8_t(c));
  w.u8(kVersion);
  w.u8(volume.bit_depth());
  w.u16(volume.slices() < 2 ? kFlagShortVolume : 0);
  w.u32(volume.slices());
  w.u32(volume.rows());
  w.u32(volume.cols());
  for (std::uint16_t v : volume.voxels()) w.u16(v);
  return w.buffer();
}

Volume decode_volume(const std::vector<std::uint8_t>& bytes, const std::string& source) {
  wire::Reader r(bytes.data(), bytes.size(), source);
  for (char c : kMagic) {
    std::size_t at = r.offset();
    if (r.u8() != std::uint8_t(c)) r.fail_at("bad magic, expected \"MCWV\"", at);
  }
  std::size_t at = r.offset();
  std::uint8_t version = r.u8();
  if (version != kVersion)
    r.fail_at("unsupported version " + std::to_string(version), at);
  at = r.offset();
  std::uint8_t bit_depth = r.u8();
  if (bit_depth < 8 || bit_depth > 16)
    r.fail_at("bit depth " + std::to_string(bit_depth) + " outside [8, 16]", at);
  at = r.offset();
  std::uint16_t flags = r.u16();
  if (flags & ~kFlagShortVolume) r.fail_at("unknown reserved flags", at);
  std::uint32_t slices = r.u32();
  std::uint32_t rows = r.u32();
  std::uint32_t cols = r.u32();
  if (slices < 1 || rows < 1 || cols < 1 ||
      std::uint64_t(slices) * rows * cols > kMaxVoxels)
    r.fail_at("implausible dimensions", 8);

  const std::uint32_t cap = (1u << bit_depth) - 1u;
  std::vector<std::uint16_t> voxels;
  voxels.reserve(std::size_t(slices) * rows * cols);
  for (std::uint64_t i = 0, n = std::uint64_t(slices) * rows * cols; i < n; ++i) {
    at = r.offset();
    std::uint16_t v = r.u16();
    if (v > cap)
      r.fail_at("voxel value " + std::to_string(v) + " exceeds 2^" +
                std::to_string(bit_depth) + "-1", at);
    voxels.push_back(v);
  }
  r.expect_exhausted();
  return Volume(slices, rows, cols, bit_depth, std::move(voxels));
}

Volume load_volume(const std::string& path) {
  return decode_volume(wire::read_file(path), path);
}

void save_volume(const Volume& volume, const std::string& path) {
  wire::write_file(path, encode_volume(volume));
}

}  // namespace mcwl

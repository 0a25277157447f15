#include "lifting.hpp"
#include "wire.hpp"

namespace mcwl {

namespace {

constexpr char kMagic[4] = {'M', 'C', 'W', 'D'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint64_t kMaxVoxels = 1ull << 28;

void write_record(wire::Writer& w, const MotionRecord& rec) {
  wire::Writer body;
  if (const auto* mvf = std::get_if<MotionVectorField>(&rec)) {
    serialize_mvf(body, *mvf);
  } else if (const auto* def = std::get_if<MeshDeformation>(&rec)) {
    serialize_mesh(body, *def);
  } else {
    throw ArgumentError("motion record is empty");
  }
  w.u32(std::uint32_t(body.size()));
  w.bytes(body.buffer());
}

MotionRecord read_record(wire::Reader& r, Method method, std::uint32_t rows,
                         std::uint32_t cols) {
  const std::size_t at = r.offset();
  const std::uint32_t length = r.u32();
  const std::size_t end = r.offset() + length;
  if (length > r.remaining()) r.fail_at("motion record length exceeds the payload", at);
  MotionRecord rec;
  if (method == Method::Mesh) {
    rec = parse_mesh(r, rows, cols);
  } else {
    rec = parse_mvf(r, rows, cols);
  }
  if (r.offset() != end) r.fail_at("motion record length mismatch", at);
  return rec;
}

}  // namespace

std::vector<std::uint8_t> encode_decomposition(const Decomposition& dec) {
  wire::Writer w;
  for (char c : kMagic) w.u8(std::uint8_t(c));
  w.u8(kVersion);
  w.u8(std::uint8_t(dec.method));
  w.u8(dec.bit_depth);
  w.u8(std::uint8_t(dec.rounding));
  w.u32(dec.slices);
  w.u32(dec.rows);
  w.u32(dec.cols);
  for (const Slice& s : dec.lowpass)
    for (std::int32_t v : s.data()) w.i32(v);
  for (const Slice& s : dec.highpass)
    for (std::int32_t v : s.data()) w.i32(v);
  for (const Decomposition::RecordPair& pair : dec.motion) {
    write_record(w, pair.from_prev);
    write_record(w, pair.from_next);
  }
  return w.buffer();
}

Decomposition decode_decomposition(const std::vector<std::uint8_t>& bytes,
                                   const std::string& source) {
  wire::Reader r(bytes.data(), bytes.size(), source);
  for (char c : kMagic) {
    std::size_t at = r.offset();
    if (r.u8() != std::uint8_t(c)) r.fail_at("bad magic, expected \"MCWD\"", at);
  }
  std::size_t at = r.offset();
  const std::uint8_t version = r.u8();
  if (version != kVersion) r.fail_at("unsupported version " + std::to_string(version), at);
  at = r.offset();
  const std::uint8_t method_byte = r.u8();
  if (method_byte > 3) r.fail_at("unknown method " + std::to_string(method_byte), at);
  at = r.offset();
  const std::uint8_t bit_depth = r.u8();
  if (bit_depth < 8 || bit_depth > 16)
    r.fail_at("bit depth " + std::to_string(bit_depth) + " outside [8, 16]", at);
  at = r.offset();
  const std::uint8_t rounding_byte = r.u8();
  if (rounding_byte > 1) r.fail_at("unknown rounding mode " + std::to_string(rounding_byte), at);

  Decomposition dec;
  dec.method = Method(method_byte);
  dec.bit_depth = bit_depth;
  dec.rounding = RoundingMode(rounding_byte);
  dec.slices = r.u32();
  dec.rows = r.u32();
  dec.cols = r.u32();
  if (dec.slices < 2 || dec.rows < 1 || dec.cols < 1 ||
      std::uint64_t(dec.slices) * dec.rows * dec.cols > kMaxVoxels)
    r.fail_at("implausible dimensions", 8);

  const std::size_t n_high = dec.slices / 2;
  const std::size_t n_low = (dec.slices + 1) / 2;
  const std::size_t plane = std::size_t(dec.rows) * dec.cols;
  auto read_band = [&](std::size_t count, std::vector<Slice>& band) {
    band.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      Slice s(dec.rows, dec.cols);
      for (std::size_t p = 0; p < plane; ++p) s.data()[p] = r.i32();
      band.push_back(std::move(s));
    }
  };
  read_band(n_low, dec.lowpass);
  read_band(n_high, dec.highpass);

  if (dec.method != Method::Zero) {
    dec.motion.reserve(n_high);
    for (std::size_t i = 0; i < n_high; ++i) {
      Decomposition::RecordPair pair;
      pair.from_prev = read_record(r, dec.method, dec.rows, dec.cols);
      pair.from_next = read_record(r, dec.method, dec.rows, dec.cols);
      dec.motion.push_back(std::move(pair));
    }
  }
  r.expect_exhausted();
  return dec;
}

void save_decomposition(const Decomposition& dec, const std::string& path) {
  wire::write_file(path, encode_decomposition(dec));
}

Decomposition load_decomposition(const std::string& path) {
  return decode_decomposition(wire::read_file(path), path);
}

}  // namespace mcwl

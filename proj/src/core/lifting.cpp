#include "lifting.hpp"

#include <utility>

namespace mcwl {

namespace {

// Which highpass slice and which stored record feed one side of the
// update for even slice 2i. The record is always the one whose
// reference is slice 2i itself; out-of-range neighbors mirror onto the
// nearest existing highpass.
struct TermRef {
  std::int32_t h;     // highpass index
  std::int32_t pair;  // record pair index
  bool from_prev;     // true: the pair's 2i -> 2i+1 record
};

std::pair<TermRef, TermRef> update_term_refs(std::int32_t i, std::int32_t n_high) {
  TermRef left = i == 0 ? TermRef{0, 0, true} : TermRef{i - 1, i - 1, false};
  TermRef right = i < n_high ? TermRef{i, i, true} : TermRef{i - 1, i - 1, false};
  return {left, right};
}

const MotionRecord& record_for(const Decomposition& dec, const TermRef& ref) {
  static const MotionRecord empty = std::monostate{};
  if (dec.method == Method::Zero) return empty;
  const Decomposition::RecordPair& pair = dec.motion[std::size_t(ref.pair)];
  return ref.from_prev ? pair.from_prev : pair.from_next;
}

void check_consistency(const Decomposition& dec) {
  const std::size_t n_high = dec.slices / 2;
  const std::size_t n_low = (dec.slices + 1) / 2;
  if (dec.slices < 2) throw ArgumentError("decomposition must cover at least 2 slices");
  if (dec.lowpass.size() != n_low || dec.highpass.size() != n_high)
    throw ArgumentError("subband slice counts do not match the volume dimensions");
  const std::size_t want_records = dec.method == Method::Zero ? 0 : n_high;
  if (dec.motion.size() != want_records)
    throw ArgumentError("motion record count does not match the method");
  for (const Slice& s : dec.lowpass)
    if (s.rows() != dec.rows || s.cols() != dec.cols)
      throw ArgumentError("lowpass slice dimensions are inconsistent");
  for (const Slice& s : dec.highpass)
    if (s.rows() != dec.rows || s.cols() != dec.cols)
      throw ArgumentError("highpass slice dimensions are inconsistent");
}

}  // namespace

std::int32_t mirror_index(std::int32_t index, std::int32_t count) {
  if (count <= 1) return 0;
  while (index < 0 || index >= count) {
    if (index < 0) index = -index;
    else index = 2 * (count - 1) - index;
  }
  return index;
}

Decomposition forward(const Volume& volume, const Compensator& comp, RoundingMode rounding) {
  if (volume.slices() < 2)
    throw ArgumentError("forward transform requires at least 2 slices");

  const std::int32_t k_count = std::int32_t(volume.slices());
  const std::int32_t n_high = k_count / 2;
  const std::int32_t n_low = (k_count + 1) / 2;
  const std::int64_t update_offset = rounding == RoundingMode::Jpeg2000 ? 2 : 0;

  std::vector<Slice> f;
  f.reserve(std::size_t(k_count));
  for (std::uint32_t k = 0; k < volume.slices(); ++k) f.push_back(volume.slice(k));

  Decomposition dec;
  dec.method = comp.method();
  dec.rounding = rounding;
  dec.slices = volume.slices();
  dec.rows = volume.rows();
  dec.cols = volume.cols();
  dec.bit_depth = volume.bit_depth();
  dec.highpass.reserve(std::size_t(n_high));
  dec.lowpass.reserve(std::size_t(n_low));
  if (dec.method != Method::Zero) dec.motion.resize(std::size_t(n_high));

  for (std::int32_t i = 0; i < n_high; ++i) {
    const std::int32_t cur = 2 * i + 1;
    const std::int32_t prev = 2 * i;
    const std::int32_t next = mirror_index(2 * i + 2, k_count);
    try {
      MotionRecord rec_prev = comp.estimate(f[prev], f[cur]);
      MotionRecord rec_next = comp.estimate(f[next], f[cur]);
      Slice pred_prev = comp.warp(f[prev], rec_prev);
      Slice pred_next = comp.warp(f[next], rec_next);
      Slice h(dec.rows, dec.cols);
      for (std::size_t p = 0; p < h.size(); ++p)
        h.data()[p] = f[cur].data()[p] -
                      std::int32_t(floor_div(
                          std::int64_t(pred_prev.data()[p]) + pred_next.data()[p], 2));
      dec.highpass.push_back(std::move(h));
      if (dec.method != Method::Zero) {
        dec.motion[std::size_t(i)].from_prev = std::move(rec_prev);
        dec.motion[std::size_t(i)].from_next = std::move(rec_next);
      }
    } catch (const Error& e) {
      throw ArgumentError("compensation failed for highpass slice " + std::to_string(i) +
                          ": " + e.what());
    }
  }

  for (std::int32_t i = 0; i < n_low; ++i) {
    auto [left, right] = update_term_refs(i, n_high);
    Slice term_l = comp.inverse_warp(dec.highpass[std::size_t(left.h)], record_for(dec, left));
    Slice term_r = comp.inverse_warp(dec.highpass[std::size_t(right.h)], record_for(dec, right));
    Slice l(dec.rows, dec.cols);
    for (std::size_t p = 0; p < l.size(); ++p)
      l.data()[p] = f[std::size_t(2 * i)].data()[p] +
                    std::int32_t(floor_div(std::int64_t(term_l.data()[p]) + term_r.data()[p] +
                                           update_offset, 4));
    dec.lowpass.push_back(std::move(l));
  }
  return dec;
}

Volume inverse(const Decomposition& dec, const Compensator& comp) {
  if (comp.method() != dec.method)
    throw ArgumentError(std::string("compensator method '") + method_name(comp.method()) +
                        "' does not match decomposition method '" + method_name(dec.method) +
                        "'");
  check_consistency(dec);

  const std::int32_t k_count = std::int32_t(dec.slices);
  const std::int32_t n_high = k_count / 2;
  const std::int32_t n_low = (k_count + 1) / 2;
  const std::int64_t update_offset = dec.rounding == RoundingMode::Jpeg2000 ? 2 : 0;

  std::vector<Slice> f(static_cast<std::size_t>(k_count));

  // Undo the update first: every term depends only on stored data.
  for (std::int32_t i = 0; i < n_low; ++i) {
    auto [left, right] = update_term_refs(i, n_high);
    Slice term_l = comp.inverse_warp(dec.highpass[std::size_t(left.h)], record_for(dec, left));
    Slice term_r = comp.inverse_warp(dec.highpass[std::size_t(right.h)], record_for(dec, right));
    Slice even = dec.lowpass[std::size_t(i)];
    for (std::size_t p = 0; p < even.size(); ++p)
      even.data()[p] -= std::int32_t(floor_div(std::int64_t(term_l.data()[p]) +
                                               term_r.data()[p] + update_offset, 4));
    f[std::size_t(2 * i)] = std::move(even);
  }

  // Then undo the prediction from the recovered even slices.
  for (std::int32_t i = 0; i < n_high; ++i) {
    const std::int32_t prev = 2 * i;
    const std::int32_t next = mirror_index(2 * i + 2, k_count);
    const MotionRecord& rec_prev = record_for(dec, TermRef{i, i, true});
    const MotionRecord& rec_next = record_for(dec, TermRef{i, i, false});
    Slice pred_prev = comp.warp(f[std::size_t(prev)], rec_prev);
    Slice pred_next = comp.warp(f[std::size_t(next)], rec_next);
    Slice odd = dec.highpass[std::size_t(i)];
    for (std::size_t p = 0; p < odd.size(); ++p)
      odd.data()[p] += std::int32_t(floor_div(std::int64_t(pred_prev.data()[p]) +
                                              pred_next.data()[p], 2));
    f[std::size_t(2 * i + 1)] = std::move(odd);
  }

  const std::int32_t cap = std::int32_t((1u << dec.bit_depth) - 1u);
  std::vector<std::uint16_t> voxels;
  voxels.reserve(std::size_t(k_count) * dec.rows * dec.cols);
  for (std::int32_t k = 0; k < k_count; ++k) {
    for (std::int32_t v : f[std::size_t(k)].data()) {
      if (v < 0 || v > cap)
        throw FormatError("reconstructed voxel " + std::to_string(v) + " in slice " +
                          std::to_string(k) + " is outside [0, 2^" +
                          std::to_string(dec.bit_depth) + "-1]; corrupt decomposition");
      voxels.push_back(std::uint16_t(v));
    }
  }
  return Volume(dec.slices, dec.rows, dec.cols, dec.bit_depth, std::move(voxels));
}

FloatSubbands forward_float_reference(const Volume& volume) {
  if (volume.slices() < 2)
    throw ArgumentError("forward transform requires at least 2 slices");
  const std::int32_t k_count = std::int32_t(volume.slices());
  const std::int32_t n_high = k_count / 2;
  const std::int32_t n_low = (k_count + 1) / 2;
  const std::size_t plane = std::size_t(volume.rows()) * volume.cols();

  FloatSubbands out;
  out.rows = volume.rows();
  out.cols = volume.cols();
  out.highpass.assign(std::size_t(n_high), std::vector<double>(plane, 0.0));
  out.lowpass.assign(std::size_t(n_low), std::vector<double>(plane, 0.0));

  auto voxel = [&](std::int32_t k, std::size_t p) {
    return double(volume.voxels()[std::size_t(k) * plane + p]);
  };
  for (std::int32_t i = 0; i < n_high; ++i) {
    const std::int32_t next = mirror_index(2 * i + 2, k_count);
    for (std::size_t p = 0; p < plane; ++p)
      out.highpass[std::size_t(i)][p] =
          voxel(2 * i + 1, p) - 0.5 * (voxel(2 * i, p) + voxel(next, p));
  }
  for (std::int32_t i = 0; i < n_low; ++i) {
    const auto& h_left = out.highpass[std::size_t(i == 0 ? 0 : i - 1)];
    const auto& h_right = out.highpass[std::size_t(i < n_high ? i : i - 1)];
    for (std::size_t p = 0; p < plane; ++p)
      out.lowpass[std::size_t(i)][p] = voxel(2 * i, p) + 0.25 * (h_left[p] + h_right[p]);
  }
  return out;
}

}  // namespace mcwl

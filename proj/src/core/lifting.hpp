#ifndef MCWL_CORE_LIFTING_HPP
#define MCWL_CORE_LIFTING_HPP

#include <string>
#include <vector>

#include "compensator.hpp"
#include "volume.hpp"

namespace mcwl {

// Mirror (whole-sample symmetric, no edge repeat) index extension:
// -1 -> 1 and count -> count-2.
std::int32_t mirror_index(std::int32_t index, std::int32_t count);

// One-level decomposition along the slice axis together with everything
// needed for bit-exact inversion: the motion records estimated in the
// prediction step are stored and reused, never re-estimated.
struct Decomposition {
  Method method = Method::Zero;
  RoundingMode rounding = RoundingMode::Paper;
  std::uint32_t slices = 0, rows = 0, cols = 0;
  std::uint8_t bit_depth = 8;
  std::vector<Slice> lowpass;   // ceil(K / 2) slices
  std::vector<Slice> highpass;  // floor(K / 2) slices
  // Per highpass index i: records for the pairs 2i -> 2i+1 and
  // (mirrored) 2i+2 -> 2i+1. Empty for the zero method.
  struct RecordPair {
    MotionRecord from_prev;
    MotionRecord from_next;
  };
  std::vector<RecordPair> motion;
};

// Analysis step. The prediction subtracts the floored average of the two
// warped reference slices; the update adds the floored quarter-sum of
// the two inverse-warped highpass neighbors.
Decomposition forward(const Volume& volume, const Compensator& comp,
                      RoundingMode rounding = RoundingMode::Paper);

// Exact inversion from the stored coefficients and motion records.
Volume inverse(const Decomposition& dec, const Compensator& comp);

// Real-valued zero-method lifting (no rounding); reference for the
// filter-bank equivalence checks.
struct FloatSubbands {
  std::uint32_t rows = 0, cols = 0;
  std::vector<std::vector<double>> lowpass, highpass;  // row-major slices
};
FloatSubbands forward_float_reference(const Volume& volume);

// "MCWD" container: magic, version u8=1, method u8, bit_depth u8,
// rounding u8, K/M/N u32 LE, lowpass then highpass slices i32 LE, then
// per highpass pair two length-prefixed motion records.
void save_decomposition(const Decomposition& dec, const std::string& path);
Decomposition load_decomposition(const std::string& path);
std::vector<std::uint8_t> encode_decomposition(const Decomposition& dec);
Decomposition decode_decomposition(const std::vector<std::uint8_t>& bytes,
                                   const std::string& source);

}  // namespace mcwl

#endif

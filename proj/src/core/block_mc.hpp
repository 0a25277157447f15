#ifndef MCWL_CORE_BLOCK_MC_HPP
#define MCWL_CORE_BLOCK_MC_HPP

#include <cstdint>
#include <vector>

#include "types.hpp"
#include "wire.hpp"

namespace mcwl {

// Per-block integer displacements for one (reference, current) slice
// pair. Blocks tile the current slice; the last row/column of blocks is
// clipped at the borders.
struct MotionVectorField {
  std::uint16_t block_size = 8;
  std::uint16_t search_range = 8;
  std::uint16_t grid_rows = 0;  // ceil(M / block_size)
  std::uint16_t grid_cols = 0;  // ceil(N / block_size)
  std::vector<MotionVec> vectors;  // row-major over the block grid

  const MotionVec& at(std::uint32_t by, std::uint32_t bx) const {
    return vectors[std::size_t(by) * grid_cols + bx];
  }
  friend bool operator==(const MotionVectorField&, const MotionVectorField&) = default;
};

enum class FillMode : std::uint8_t {
  None,             // unconnected pixels become 0
  NearestNeighbor,  // unconnected pixels adopt the nearest connected pixel's vector
};

// Exhaustive SAD search over [-r, r]^2 for every block of `cur` against
// `ref`. Candidates that would read outside `ref` are skipped; ties are
// broken by smaller |dy|+|dx|, then smaller dy, then smaller dx, so the
// zero vector wins all ties.
MotionVectorField estimate_mvf(const Slice& ref, const Slice& cur, std::uint32_t block_size,
                               std::uint32_t search_range);

// Predictor for the current slice: each output block copies the
// reference block displaced by its vector.
Slice warp(const Slice& ref, const MotionVectorField& mvf);

// Scatter-based inversion: pixel q of `s` lands on q + v(q). Multiple
// connected outputs take the floor of the mean of their contributions;
// unconnected outputs are resolved per `fill`.
Slice inverse_warp(const Slice& s, const MotionVectorField& mvf, FillMode fill);

void serialize_mvf(wire::Writer& w, const MotionVectorField& mvf);
MotionVectorField parse_mvf(wire::Reader& r, std::uint32_t rows, std::uint32_t cols);

}  // namespace mcwl

#endif

#ifndef MCWL_CORE_MESH_MC_HPP
#define MCWL_CORE_MESH_MC_HPP

#include <cstdint>
#include <vector>

#include "types.hpp"
#include "wire.hpp"

namespace mcwl {

// Control-grid deformation: a regular vertex grid with integer
// per-vertex displacements. Vertices sit at (i*g, j*g) clamped to the
// slice bounds; border vertices never move, which keeps the dense field
// hole-free at the slice edges.
struct MeshDeformation {
  std::uint16_t grid_spacing = 8;
  std::uint16_t vertex_rows = 0;  // floor(M / g) + 1
  std::uint16_t vertex_cols = 0;  // floor(N / g) + 1
  std::vector<MotionVec> displacements;  // row-major over the vertex grid

  const MotionVec& at(std::uint32_t i, std::uint32_t j) const {
    return displacements[std::size_t(i) * vertex_cols + j];
  }
  friend bool operator==(const MeshDeformation&, const MeshDeformation&) = default;
};

// Per-pixel displacement field obtained by bilinear interpolation of the
// vertex displacements (row-major, exact rationals rendered as double).
struct DenseField {
  std::uint32_t rows = 0, cols = 0;
  std::vector<double> dy, dx;
};

// Vertex motion estimation: for each interior vertex, the w x w block of
// `cur` centered on the vertex (clipped at the slice border) is full
// searched in `ref` with the same SAD and tie-break contract as the
// block matcher. Border vertices stay at (0, 0).
MeshDeformation estimate_mesh(const Slice& ref, const Slice& cur, std::uint32_t grid_spacing,
                              std::uint32_t vertex_block, std::uint32_t search_range);

DenseField dense_field(const MeshDeformation& def, std::uint32_t rows, std::uint32_t cols);

// Deformation warp: output(p) samples `ref` bilinearly at p + d(p),
// clamped to the slice, rounded half up. Total by construction.
Slice warp(const Slice& ref, const MeshDeformation& def);

// Negated-field approximate inverse: output(q) samples at q - d(q).
Slice inverse_warp(const Slice& s, const MeshDeformation& def);

void serialize_mesh(wire::Writer& w, const MeshDeformation& def);
MeshDeformation parse_mesh(wire::Reader& r, std::uint32_t rows, std::uint32_t cols);

}  // namespace mcwl

#endif

#ifndef MCWL_CORE_PHANTOM_HPP
#define MCWL_CORE_PHANTOM_HPP

#include <cstdint>

#include "volume.hpp"

namespace mcwl {

enum class PhantomKind : std::uint8_t {
  Static = 0,             // slice 0 repeated
  GlobalTranslation = 1,  // slice k = base shifted by k*(shift_y, shift_x), clamp-to-edge
  EllipticDeformation = 2,  // ellipse boundary grows by `amplitude` voxels per slice
  Noise = 3,              // mid-gray plus per-voxel uniform noise
};

// Deterministic synthetic volume description. `noise_amplitude` adds
// seeded uniform noise in [-a, a] on top of any kind (clamped to the
// intensity range), re-rolled per voxel so slices decorrelate.
struct PhantomSpec {
  PhantomKind kind = PhantomKind::Static;
  std::int32_t shift_y = 0;    // per-slice translation (GlobalTranslation)
  std::int32_t shift_x = 0;
  std::int32_t amplitude = 0;  // per-slice boundary displacement (EllipticDeformation)
  std::int32_t noise_amplitude = 0;
  std::uint64_t seed = 0;
};

Volume generate_phantom(const PhantomSpec& spec, std::uint32_t slices, std::uint32_t rows,
                        std::uint32_t cols, std::uint8_t bit_depth);

}  // namespace mcwl

#endif

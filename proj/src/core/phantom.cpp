#include "phantom.hpp"

#include <algorithm>

#include "rng.hpp"

namespace mcwl {

namespace {

constexpr std::uint32_t kLatticeSpacing = 8;

std::int64_t clamp_i64(std::int64_t v, std::int64_t lo, std::int64_t hi) {
  return std::max(lo, std::min(hi, v));
}

// 16-bit value noise on a lattice with spacing 8, bilinearly
// interpolated with integer arithmetic. Coordinates must be in range.
std::uint32_t lattice_sample(std::uint64_t seed, std::uint32_t gy, std::uint32_t gx) {
  std::uint64_t h = mix64(seed ^ (std::uint64_t(gy) * 0x9E3779B97F4A7C15ull) ^
                          (std::uint64_t(gx) * 0xC2B2AE3D27D4EB4Full));
  return std::uint32_t(h >> 48);  // top 16 bits
}

std::uint32_t texture16(std::uint64_t seed, std::uint32_t m, std::uint32_t n) {
  const std::uint32_t s = kLatticeSpacing;
  std::uint32_t gy = m / s, ry = m % s;
  std::uint32_t gx = n / s, rx = n % s;
  std::uint64_t v00 = lattice_sample(seed, gy, gx);
  std::uint64_t v10 = lattice_sample(seed, gy + 1, gx);
  std::uint64_t v01 = lattice_sample(seed, gy, gx + 1);
  std::uint64_t v11 = lattice_sample(seed, gy + 1, gx + 1);
  std::uint64_t top = v00 * (s - ry) + v10 * ry;
  std::uint64_t bot = v01 * (s - ry) + v11 * ry;
  return std::uint32_t((top * (s - rx) + bot * rx) / (s * s));
}

// Base content of slice k before optional noise, evaluated at (m, n).
std::uint16_t base_value(const PhantomSpec& spec, std::uint32_t imax, std::uint32_t k,
                         std::int64_t rows, std::int64_t cols, std::int64_t m, std::int64_t n) {
  switch (spec.kind) {
    case PhantomKind::Static:
    case PhantomKind::Noise: {
      if (spec.kind == PhantomKind::Noise) return std::uint16_t(imax / 2);
      std::uint64_t t = texture16(spec.seed, std::uint32_t(m), std::uint32_t(n));
      return std::uint16_t(t * imax / 65535u);
    }
    case PhantomKind::GlobalTranslation: {
      std::int64_t sy = clamp_i64(m - std::int64_t(k) * spec.shift_y, 0, rows - 1);
      std::int64_t sx = clamp_i64(n - std::int64_t(k) * spec.shift_x, 0, cols - 1);
      std::uint64_t t = texture16(spec.seed, std::uint32_t(sy), std::uint32_t(sx));
      return std::uint16_t(t * imax / 65535u);
    }
    case PhantomKind::EllipticDeformation: {
      // Ellipse centered in the slice whose semi-axes grow by
      // `amplitude` voxels per slice; texture inside and out keeps
      // motion search meaningful.
      std::int64_t cy = rows / 2, cx = cols / 2;
      std::int64_t a = rows / 4 + std::int64_t(k) * spec.amplitude;
      std::int64_t b = cols / 4 + std::int64_t(k) * spec.amplitude;
      a = std::max<std::int64_t>(1, std::min(a, rows / 2 - 1));
      b = std::max<std::int64_t>(1, std::min(b, cols / 2 - 1));
      std::int64_t dy = m - cy, dx = n - cx;
      bool inside = dy * dy * b * b + dx * dx * a * a <= a * a * b * b;
      std::uint64_t t = texture16(spec.seed, std::uint32_t(m), std::uint32_t(n));
      std::uint64_t tex = t * imax / 65535u;
      if (inside) return std::uint16_t(imax / 4 + tex / 2);
      return std::uint16_t(tex / 8);
    }
  }
  throw ArgumentError("unknown phantom kind");
}

}  // namespace

Volume generate_phantom(const PhantomSpec& spec, std::uint32_t slices, std::uint32_t rows,
                        std::uint32_t cols, std::uint8_t bit_depth) {
  if (bit_depth < 8 || bit_depth > 16)
    throw ArgumentError("bit depth must be in [8, 16]");
  if (slices < 1 || rows < 1 || cols < 1)
    throw ArgumentError("phantom dimensions must be positive");
  const std::int64_t limit = std::min(rows, cols) / 2;
  const std::int64_t step = spec.kind == PhantomKind::GlobalTranslation
                                ? std::max(std::abs(std::int64_t(spec.shift_y)),
                                           std::abs(std::int64_t(spec.shift_x)))
                                : std::int64_t(std::abs(spec.amplitude));
  if (step > limit)
    throw ArgumentError("per-slice displacement " + std::to_string(step) +
                        " exceeds min(M,N)/2 = " + std::to_string(limit));
  if (spec.noise_amplitude < 0)
    throw ArgumentError("noise amplitude must be nonnegative");
  if (spec.kind == PhantomKind::Noise && spec.noise_amplitude == 0)
    throw ArgumentError("noise phantom requires a positive noise amplitude");

  const std::uint32_t imax = (1u << bit_depth) - 1u;
  std::vector<std::uint16_t> voxels;
  voxels.reserve(std::size_t(slices) * rows * cols);
  // One noise stream for the whole volume, consumed in slice-major
  // raster order; this ordering is part of the documented contract.
  Xorshift64Star noise(mix64(spec.seed ^ 0xA02BDBF7BB3C0A7ull));
  const std::uint32_t span = std::uint32_t(spec.noise_amplitude) * 2u + 1u;
  for (std::uint32_t k = 0; k < slices; ++k) {
    for (std::uint32_t m = 0; m < rows; ++m) {
      for (std::uint32_t n = 0; n < cols; ++n) {
        std::int64_t v = base_value(spec, imax, k, rows, cols, m, n);
        if (spec.noise_amplitude > 0)
          v += std::int64_t(noise.next_below(span)) - spec.noise_amplitude;
        voxels.push_back(std::uint16_t(clamp_i64(v, 0, imax)));
      }
    }
  }
  return Volume(slices, rows, cols, bit_depth, std::move(voxels));
}

}  // namespace mcwl

#include "block_mc.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace mcwl {

namespace {

std::uint32_t ceil_div(std::uint32_t a, std::uint32_t b) { return (a + b - 1) / b; }

void check_field(const Slice& s, const MotionVectorField& mvf) {
  if (mvf.block_size == 0) throw ArgumentError("block size must be positive");
  if (mvf.grid_rows != ceil_div(s.rows(), mvf.block_size) ||
      mvf.grid_cols != ceil_div(s.cols(), mvf.block_size))
    throw ArgumentError("motion vector field does not cover the slice");
  if (mvf.vectors.size() != std::size_t(mvf.grid_rows) * mvf.grid_cols)
    throw ArgumentError("motion vector count does not match the grid");
}

}  // namespace

MotionVectorField estimate_mvf(const Slice& ref, const Slice& cur, std::uint32_t block_size,
                               std::uint32_t search_range) {
  if (!ref.same_dims(cur)) throw ArgumentError("reference and current slice dimensions differ");
  if (block_size < 1) throw ArgumentError("block size must be positive");
  if (search_range > 127) throw ArgumentError("search range must fit one signed byte");

  const std::int32_t rows = std::int32_t(cur.rows());
  const std::int32_t cols = std::int32_t(cur.cols());
  const std::int32_t b = std::int32_t(block_size);
  const std::int32_t r = std::int32_t(search_range);

  MotionVectorField mvf;
  mvf.block_size = std::uint16_t(block_size);
  mvf.search_range = std::uint16_t(search_range);
  mvf.grid_rows = std::uint16_t(ceil_div(cur.rows(), block_size));
  mvf.grid_cols = std::uint16_t(ceil_div(cur.cols(), block_size));
  mvf.vectors.reserve(std::size_t(mvf.grid_rows) * mvf.grid_cols);

  for (std::int32_t by = 0; by < rows; by += b) {
    const std::int32_t bh = std::min(b, rows - by);
    for (std::int32_t bx = 0; bx < cols; bx += b) {
      const std::int32_t bw = std::min(b, cols - bx);

      std::uint64_t best_sad = std::numeric_limits<std::uint64_t>::max();
      std::int32_t best_cost = 0, best_dy = 0, best_dx = 0;
      for (std::int32_t dy = -r; dy <= r; ++dy) {
        if (by + dy < 0 || by + dy + bh > rows) continue;
        for (std::int32_t dx = -r; dx <= r; ++dx) {
          if (bx + dx < 0 || bx + dx + bw > cols) continue;
          std::uint64_t sad = 0;
          for (std::int32_t m = 0; m < bh; ++m)
            for (std::int32_t n = 0; n < bw; ++n)
              sad += std::uint64_t(
                  std::abs(cur.at(by + m, bx + n) - ref.at(by + dy + m, bx + dx + n)));
          const std::int32_t cost = std::abs(dy) + std::abs(dx);
          if (sad < best_sad ||
              (sad == best_sad && (cost < best_cost ||
                                   (cost == best_cost &&
                                    (dy < best_dy || (dy == best_dy && dx < best_dx)))))) {
            best_sad = sad;
            best_cost = cost;
            best_dy = dy;
            best_dx = dx;
          }
        }
      }
      mvf.vectors.push_back({std::int16_t(best_dy), std::int16_t(best_dx)});
    }
  }
  return mvf;
}

Slice warp(const Slice& ref, const MotionVectorField& mvf) {
  check_field(ref, mvf);
  const std::int32_t rows = std::int32_t(ref.rows());
  const std::int32_t cols = std::int32_t(ref.cols());
  const std::int32_t b = mvf.block_size;

  Slice out(ref.rows(), ref.cols());
  for (std::int32_t m = 0; m < rows; ++m) {
    for (std::int32_t n = 0; n < cols; ++n) {
      const MotionVec& v = mvf.at(std::uint32_t(m / b), std::uint32_t(n / b));
      const std::int32_t sy = m + v.dy;
      const std::int32_t sx = n + v.dx;
      if (sy < 0 || sy >= rows || sx < 0 || sx >= cols)
        throw ArgumentError("motion vector reads outside the reference slice");
      out.at(m, n) = ref.at(sy, sx);
    }
  }
  return out;
}

Slice inverse_warp(const Slice& s, const MotionVectorField& mvf, FillMode fill) {
  check_field(s, mvf);
  const std::int32_t rows = std::int32_t(s.rows());
  const std::int32_t cols = std::int32_t(s.cols());
  const std::int32_t b = mvf.block_size;

  std::vector<std::int64_t> sum(s.size(), 0);
  std::vector<std::int32_t> count(s.size(), 0);
  // First scatter writer in raster order donates the vector a connected
  // pixel carries for hole filling.
  std::vector<MotionVec> landed(s.size());

  for (std::int32_t m = 0; m < rows; ++m) {
    for (std::int32_t n = 0; n < cols; ++n) {
      const MotionVec& v = mvf.at(std::uint32_t(m / b), std::uint32_t(n / b));
      const std::int32_t ty = m + v.dy;
      const std::int32_t tx = n + v.dx;
      if (ty < 0 || ty >= rows || tx < 0 || tx >= cols) continue;
      const std::size_t at = std::size_t(ty) * cols + tx;
      sum[at] += s.at(m, n);
      if (count[at] == 0) landed[at] = v;
      ++count[at];
    }
  }

  Slice out(s.rows(), s.cols());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (count[i] > 0) out.data()[i] = std::int32_t(floor_div(sum[i], count[i]));

  if (fill == FillMode::NearestNeighbor) {
    // Nearest-neighbor interpolation of the inverted vector field over
    // the per-pixel connectedness map; Euclidean distance, raster order
    // breaking ties.
    for (std::int32_t m = 0; m < rows; ++m) {
      for (std::int32_t n = 0; n < cols; ++n) {
        const std::size_t at = std::size_t(m) * cols + n;
        if (count[at] > 0) continue;
        std::int64_t best_d2 = std::numeric_limits<std::int64_t>::max();
        MotionVec adopted{};
        for (std::int32_t y = 0; y < rows; ++y) {
          for (std::int32_t x = 0; x < cols; ++x) {
            if (count[std::size_t(y) * cols + x] == 0) continue;
            const std::int64_t d2 =
                std::int64_t(y - m) * (y - m) + std::int64_t(x - n) * (x - n);
            if (d2 < best_d2) {
              best_d2 = d2;
              adopted = landed[std::size_t(y) * cols + x];
            }
          }
        }
        if (best_d2 == std::numeric_limits<std::int64_t>::max()) continue;  // no pixel connected
        const std::int32_t sy = std::clamp(m - adopted.dy, 0, rows - 1);
        const std::int32_t sx = std::clamp(n - adopted.dx, 0, cols - 1);
        out.at(m, n) = s.at(sy, sx);
      }
    }
  }
  return out;
}

void serialize_mvf(wire::Writer& w, const MotionVectorField& mvf) {
  w.u16(mvf.block_size);
  w.u16(mvf.search_range);
  w.u16(mvf.grid_rows);
  w.u16(mvf.grid_cols);
  for (const MotionVec& v : mvf.vectors) {
    w.i8(std::int8_t(v.dy));
    w.i8(std::int8_t(v.dx));
  }
}

MotionVectorField parse_mvf(wire::Reader& r, std::uint32_t rows, std::uint32_t cols) {
  MotionVectorField mvf;
  std::size_t at = r.offset();
  mvf.block_size = r.u16();
  mvf.search_range = r.u16();
  mvf.grid_rows = r.u16();
  mvf.grid_cols = r.u16();
  if (mvf.block_size == 0 || mvf.grid_rows != ceil_div(rows, mvf.block_size) ||
      mvf.grid_cols != ceil_div(cols, mvf.block_size))
    r.fail_at("motion grid does not cover the slice", at);
  mvf.vectors.reserve(std::size_t(mvf.grid_rows) * mvf.grid_cols);
  for (std::size_t i = 0, n = std::size_t(mvf.grid_rows) * mvf.grid_cols; i < n; ++i) {
    at = r.offset();
    MotionVec v{r.i8(), r.i8()};
    if (std::abs(v.dy) > mvf.search_range || std::abs(v.dx) > mvf.search_range)
      r.fail_at("motion vector exceeds the search range", at);
    mvf.vectors.push_back(v);
  }
  return mvf;
}

}  // namespace mcwl

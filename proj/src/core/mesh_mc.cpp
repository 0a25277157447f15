#include "mesh_mc.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace mcwl {

namespace {

std::uint32_t vertex_count(std::uint32_t extent, std::uint32_t g) { return extent / g + 1; }

std::int64_t vertex_pos(std::uint32_t index, std::uint32_t g, std::uint32_t extent) {
  return std::min<std::int64_t>(std::int64_t(index) * g, std::int64_t(extent) - 1);
}

void check_deformation(const Slice& s, const MeshDeformation& def) {
  if (def.grid_spacing == 0) throw ArgumentError("grid spacing must be positive");
  if (def.vertex_rows != vertex_count(s.rows(), def.grid_spacing) ||
      def.vertex_cols != vertex_count(s.cols(), def.grid_spacing))
    throw ArgumentError("mesh deformation does not cover the slice");
  if (def.displacements.size() != std::size_t(def.vertex_rows) * def.vertex_cols)
    throw ArgumentError("vertex displacement count does not match the grid");
}

// Displacement at one pixel as exact rationals num/denom; the four
// corner weights of the enclosing cell sum to denom. Pixels past the
// last (clamped) vertex reuse the last cell with the interpolation
// parameter saturated.
struct PixelDisp {
  std::int64_t num_y = 0, num_x = 0;
  std::int64_t denom = 1;
};

PixelDisp displacement_at(const MeshDeformation& def, std::uint32_t rows, std::uint32_t cols,
                          std::int64_t m, std::int64_t n) {
  const std::uint32_t g = def.grid_spacing;
  PixelDisp d;
  if (def.vertex_rows < 2 || def.vertex_cols < 2) {
    const MotionVec& v = def.displacements.empty() ? MotionVec{} : def.displacements[0];
    d.num_y = v.dy;
    d.num_x = v.dx;
    return d;
  }
  const std::uint32_t ci = std::min<std::uint32_t>(std::uint32_t(m) / g, def.vertex_rows - 2);
  const std::uint32_t cj = std::min<std::uint32_t>(std::uint32_t(n) / g, def.vertex_cols - 2);
  const std::int64_t top = vertex_pos(ci, g, rows);
  const std::int64_t left = vertex_pos(cj, g, cols);
  const std::int64_t hy = vertex_pos(ci + 1, g, rows) - top;
  const std::int64_t wx = vertex_pos(cj + 1, g, cols) - left;
  // hy or wx can collapse to 0 when the clamped last vertex coincides
  // with its neighbor (g = 1); the first vertex of the pair then wins.
  const std::int64_t u = hy == 0 ? 0 : std::min(m - top, hy);
  const std::int64_t v = wx == 0 ? 0 : std::min(n - left, wx);
  const std::int64_t ey = std::max<std::int64_t>(hy, 1);
  const std::int64_t ex = std::max<std::int64_t>(wx, 1);
  const MotionVec& c00 = def.at(ci, cj);
  const MotionVec& c10 = def.at(ci + 1, cj);
  const MotionVec& c01 = def.at(ci, cj + 1);
  const MotionVec& c11 = def.at(ci + 1, cj + 1);
  const std::int64_t w00 = (ey - u) * (ex - v);
  const std::int64_t w10 = u * (ex - v);
  const std::int64_t w01 = (ey - u) * v;
  const std::int64_t w11 = u * v;
  d.num_y = c00.dy * w00 + c10.dy * w10 + c01.dy * w01 + c11.dy * w11;
  d.num_x = c00.dx * w00 + c10.dx * w10 + c01.dx * w01 + c11.dx * w11;
  d.denom = ey * ex;
  return d;
}

// Bilinear intensity sample of `s` at the rational position
// (ynum/denom, xnum/denom), clamped into the slice, rounded half up.
std::int32_t sample_bilinear(const Slice& s, std::int64_t ynum, std::int64_t xnum,
                             std::int64_t denom) {
  const std::int64_t rows = s.rows(), cols = s.cols();
  ynum = std::clamp<std::int64_t>(ynum, 0, (rows - 1) * denom);
  xnum = std::clamp<std::int64_t>(xnum, 0, (cols - 1) * denom);
  const std::int64_t y0 = ynum / denom, fy = ynum - y0 * denom;
  const std::int64_t x0 = xnum / denom, fx = xnum - x0 * denom;
  const std::int64_t y1 = std::min(y0 + 1, rows - 1);
  const std::int64_t x1 = std::min(x0 + 1, cols - 1);
  const std::int64_t acc =
      std::int64_t(s.at(std::uint32_t(y0), std::uint32_t(x0))) * (denom - fy) * (denom - fx) +
      std::int64_t(s.at(std::uint32_t(y0), std::uint32_t(x1))) * (denom - fy) * fx +
      std::int64_t(s.at(std::uint32_t(y1), std::uint32_t(x0))) * fy * (denom - fx) +
      std::int64_t(s.at(std::uint32_t(y1), std::uint32_t(x1))) * fy * fx;
  const std::int64_t dd = denom * denom;
  return std::int32_t(floor_div(2 * acc + dd, 2 * dd));
}

Slice mesh_resample(const Slice& s, const MeshDeformation& def, bool negate) {
  check_deformation(s, def);
  Slice out(s.rows(), s.cols());
  for (std::int64_t m = 0; m < std::int64_t(s.rows()); ++m) {
    for (std::int64_t n = 0; n < std::int64_t(s.cols()); ++n) {
      PixelDisp d = displacement_at(def, s.rows(), s.cols(), m, n);
      const std::int64_t sign = negate ? -1 : 1;
      out.at(std::uint32_t(m), std::uint32_t(n)) =
          sample_bilinear(s, m * d.denom + sign * d.num_y, n * d.denom + sign * d.num_x,
                          d.denom);
    }
  }
  return out;
}

}  // namespace

MeshDeformation estimate_mesh(const Slice& ref, const Slice& cur, std::uint32_t grid_spacing,
                              std::uint32_t vertex_block, std::uint32_t search_range) {
  if (!ref.same_dims(cur)) throw ArgumentError("reference and current slice dimensions differ");
  if (grid_spacing < 1 || grid_spacing > 256)
    throw ArgumentError("grid spacing must be in [1, 256]");
  if (vertex_block % 2 == 0) throw ArgumentError("vertex block side must be odd");
  if (vertex_block > std::min(cur.rows(), cur.cols()))
    throw ArgumentError("vertex block side exceeds the slice");
  if (search_range > 127) throw ArgumentError("search range must fit one signed byte");

  const std::int32_t rows = std::int32_t(cur.rows());
  const std::int32_t cols = std::int32_t(cur.cols());
  const std::int32_t half = std::int32_t(vertex_block) / 2;
  const std::int32_t r = std::int32_t(search_range);

  MeshDeformation def;
  def.grid_spacing = std::uint16_t(grid_spacing);
  def.vertex_rows = std::uint16_t(vertex_count(cur.rows(), grid_spacing));
  def.vertex_cols = std::uint16_t(vertex_count(cur.cols(), grid_spacing));
  def.displacements.assign(std::size_t(def.vertex_rows) * def.vertex_cols, MotionVec{});

  for (std::uint32_t i = 1; i + 1 < def.vertex_rows; ++i) {
    for (std::uint32_t j = 1; j + 1 < def.vertex_cols; ++j) {
      const std::int32_t vy = std::int32_t(vertex_pos(i, grid_spacing, cur.rows()));
      const std::int32_t vx = std::int32_t(vertex_pos(j, grid_spacing, cur.cols()));
      const std::int32_t top = std::max(vy - half, 0);
      const std::int32_t left = std::max(vx - half, 0);
      const std::int32_t bh = std::min(vy + half + 1, rows) - top;
      const std::int32_t bw = std::min(vx + half + 1, cols) - left;

      std::uint64_t best_sad = std::numeric_limits<std::uint64_t>::max();
      std::int32_t best_cost = 0, best_dy = 0, best_dx = 0;
      for (std::int32_t dy = -r; dy <= r; ++dy) {
        if (top + dy < 0 || top + dy + bh > rows) continue;
        for (std::int32_t dx = -r; dx <= r; ++dx) {
          if (left + dx < 0 || left + dx + bw > cols) continue;
          std::uint64_t sad = 0;
          for (std::int32_t m = 0; m < bh; ++m)
            for (std::int32_t n = 0; n < bw; ++n)
              sad += std::uint64_t(std::abs(cur.at(top + m, left + n) -
                                            ref.at(top + dy + m, left + dx + n)));
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
      def.displacements[std::size_t(i) * def.vertex_cols + j] = {std::int16_t(best_dy),
                                                                 std::int16_t(best_dx)};
    }
  }
  return def;
}

DenseField dense_field(const MeshDeformation& def, std::uint32_t rows, std::uint32_t cols) {
  Slice probe(rows, cols);
  check_deformation(probe, def);
  DenseField field;
  field.rows = rows;
  field.cols = cols;
  field.dy.reserve(std::size_t(rows) * cols);
  field.dx.reserve(std::size_t(rows) * cols);
  for (std::int64_t m = 0; m < std::int64_t(rows); ++m) {
    for (std::int64_t n = 0; n < std::int64_t(cols); ++n) {
      PixelDisp d = displacement_at(def, rows, cols, m, n);
      field.dy.push_back(double(d.num_y) / double(d.denom));
      field.dx.push_back(double(d.num_x) / double(d.denom));
    }
  }
  return field;
}

Slice warp(const Slice& ref, const MeshDeformation& def) { return mesh_resample(ref, def, false); }

Slice inverse_warp(const Slice& s, const MeshDeformation& def) {
  return mesh_resample(s, def, true);
}

void serialize_mesh(wire::Writer& w, const MeshDeformation& def) {
  w.u16(def.grid_spacing);
  w.u16(def.vertex_rows);
  w.u16(def.vertex_cols);
  for (const MotionVec& v : def.displacements) {
    w.i8(std::int8_t(v.dy));
    w.i8(std::int8_t(v.dx));
  }
}

MeshDeformation parse_mesh(wire::Reader& r, std::uint32_t rows, std::uint32_t cols) {
  MeshDeformation def;
  std::size_t at = r.offset();
  def.grid_spacing = r.u16();
  def.vertex_rows = r.u16();
  def.vertex_cols = r.u16();
  if (def.grid_spacing == 0 || def.grid_spacing > 256 ||
      def.vertex_rows != vertex_count(rows, def.grid_spacing) ||
      def.vertex_cols != vertex_count(cols, def.grid_spacing))
    r.fail_at("mesh grid does not cover the slice", at);
  def.displacements.reserve(std::size_t(def.vertex_rows) * def.vertex_cols);
  for (std::uint32_t i = 0; i < def.vertex_rows; ++i) {
    for (std::uint32_t j = 0; j < def.vertex_cols; ++j) {
      at = r.offset();
      MotionVec v{r.i8(), r.i8()};
      const bool border =
          i == 0 || j == 0 || i + 1 == def.vertex_rows || j + 1 == def.vertex_cols;
      if (border && (v.dy != 0 || v.dx != 0))
        r.fail_at("border vertex carries a nonzero displacement", at);
      def.displacements.push_back(v);
    }
  }
  return def;
}

}  // namespace mcwl

#include <doctest.h>

#include "core/mesh_mc.hpp"
#include "core/phantom.hpp"
#include "oracles.hpp"

using namespace mcwl;

namespace {

MeshDeformation make_mesh(std::uint32_t rows, std::uint32_t cols, std::uint32_t g,
                          MotionVec fill = {0, 0}) {
  MeshDeformation def;
  def.grid_spacing = std::uint16_t(g);
  def.vertex_rows = std::uint16_t(rows / g + 1);
  def.vertex_cols = std::uint16_t(cols / g + 1);
  def.displacements.assign(std::size_t(def.vertex_rows) * def.vertex_cols, fill);
  return def;
}

}  // namespace

TEST_CASE("identical slices and zero range give the pinned mesh") {
  Slice s = oracle::random_slice(15, 32, 32, 0, 4095);
  for (std::uint32_t r : {8u, 0u}) {
    MeshDeformation def = estimate_mesh(s, s, 8, 7, r);
    for (const MotionVec& v : def.displacements) {
      CHECK(v.dy == 0);
      CHECK(v.dx == 0);
    }
  }
}

TEST_CASE("interior vertices track a global translation") {
  PhantomSpec spec;
  spec.kind = PhantomKind::GlobalTranslation;
  spec.shift_y = 2;
  spec.shift_x = 3;
  spec.seed = 5;
  Volume v = generate_phantom(spec, 2, 64, 64, 12);
  MeshDeformation def = estimate_mesh(v.slice(0), v.slice(1), 8, 7, 8);
  CHECK(def.vertex_rows == 9);
  CHECK(def.vertex_cols == 9);
  // Vertices whose 7x7 window sits in the unclamped region of slice 1.
  for (std::uint32_t i = 2; i + 2 < def.vertex_rows; ++i) {
    for (std::uint32_t j = 2; j + 2 < def.vertex_cols; ++j) {
      CHECK(def.at(i, j).dy == -2);
      CHECK(def.at(i, j).dx == -3);
    }
  }
  // Border pinning.
  for (std::uint32_t j = 0; j < def.vertex_cols; ++j) {
    CHECK(def.at(0, j) == MotionVec{0, 0});
    CHECK(def.at(def.vertex_rows - 1, j) == MotionVec{0, 0});
  }
  for (std::uint32_t i = 0; i < def.vertex_rows; ++i) {
    CHECK(def.at(i, 0) == MotionVec{0, 0});
    CHECK(def.at(i, def.vertex_cols - 1) == MotionVec{0, 0});
  }
}

TEST_CASE("vertex search matches the brute-force SAD oracle") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Slice ref = oracle::random_slice(seed * 2 + 100, 40, 40, 0, 4095);
    Slice cur = oracle::random_slice(seed * 2 + 101, 40, 40, 0, 4095);
    MeshDeformation def = estimate_mesh(ref, cur, 8, 7, 8);
    for (std::uint32_t i = 1; i + 1 < def.vertex_rows; ++i) {
      for (std::uint32_t j = 1; j + 1 < def.vertex_cols; ++j) {
        const std::int32_t vy = std::int32_t(std::min<std::uint32_t>(i * 8, 39));
        const std::int32_t vx = std::int32_t(std::min<std::uint32_t>(j * 8, 39));
        const std::int32_t top = std::max(vy - 3, 0), left = std::max(vx - 3, 0);
        const std::int32_t bh = std::min(vy + 4, 40) - top;
        const std::int32_t bw = std::min(vx + 4, 40) - left;
        const MotionVec& v = def.at(i, j);
        CHECK(oracle::sad_at(ref, cur, top, left, bh, bw, v.dy, v.dx) ==
              oracle::min_sad(ref, cur, top, left, bh, bw, 8));
      }
    }
  }
}

TEST_CASE("dense field: zeros, vertex reproduction and the cell center") {
  SUBCASE("all-zero vertices") {
    MeshDeformation def = make_mesh(17, 17, 8);
    DenseField f = dense_field(def, 17, 17);
    for (double d : f.dy) CHECK(d == 0.0);
    for (double d : f.dx) CHECK(d == 0.0);
  }
  SUBCASE("single cell, one moving corner") {
    // 9x9 slice with g=8 is one full cell; corner (1,1) displaced by
    // (0,4) weighs 1/4 at the center: dx = 1.
    MeshDeformation def = make_mesh(9, 9, 8);
    def.displacements[3] = {0, 4};  // vertex (1,1)
    DenseField f = dense_field(def, 9, 9);
    CHECK(f.dx[4 * 9 + 4] == doctest::Approx(1.0));
    CHECK(f.dy[4 * 9 + 4] == doctest::Approx(0.0));
    // quarter points: weights u*v/64 = 2*2/64, 6*6/64
    CHECK(f.dx[2 * 9 + 2] == doctest::Approx(4.0 * 4.0 / 64.0));
    CHECK(f.dx[6 * 9 + 6] == doctest::Approx(4.0 * 36.0 / 64.0));
  }
  SUBCASE("vertex positions reproduce vertex displacements") {
    MeshDeformation def = make_mesh(24, 24, 8);
    // interior vertex (1,1) at pixel (8,8), (2,2) at (16,16)
    def.displacements[std::size_t(1) * def.vertex_cols + 1] = {3, -2};
    def.displacements[std::size_t(2) * def.vertex_cols + 2] = {-5, 7};
    DenseField f = dense_field(def, 24, 24);
    CHECK(f.dy[8 * 24 + 8] == doctest::Approx(3.0));
    CHECK(f.dx[8 * 24 + 8] == doctest::Approx(-2.0));
    CHECK(f.dy[16 * 24 + 16] == doctest::Approx(-5.0));
    CHECK(f.dx[16 * 24 + 16] == doctest::Approx(7.0));
    CHECK(f.dy[0] == doctest::Approx(0.0));  // pinned border vertex
  }
}

TEST_CASE("zero deformation warps are exact identities") {
  Slice s = oracle::random_slice(77, 21, 19, -300, 300);
  MeshDeformation def = make_mesh(21, 19, 8);
  CHECK(warp(s, def) == s);
  CHECK(inverse_warp(s, def) == s);
}

TEST_CASE("uniform unit field shifts columns with edge clamping") {
  // Bypasses the border pin: every vertex displaced by (0,1).
  Slice s = oracle::random_slice(91, 16, 16, 0, 1000);
  MeshDeformation def = make_mesh(16, 16, 8, {0, 1});
  Slice w = warp(s, def);
  for (std::uint32_t m = 0; m < 16; ++m) {
    for (std::uint32_t n = 0; n + 1 < 16; ++n) CHECK(w.at(m, n) == s.at(m, n + 1));
    CHECK(w.at(m, 15) == s.at(m, 15));
  }
  Slice iw = inverse_warp(s, def);
  for (std::uint32_t m = 0; m < 16; ++m) {
    for (std::uint32_t n = 1; n < 16; ++n) CHECK(iw.at(m, n) == s.at(m, n - 1));
    CHECK(iw.at(m, 0) == s.at(m, 0));
  }
}

TEST_CASE("warps are total and deterministic under arbitrary deformations") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint32_t rows = 17 + rng() % 16, cols = 17 + rng() % 16;
    Slice s = oracle::random_slice(rng(), rows, cols, -4000, 4000);
    MeshDeformation def = make_mesh(rows, cols, 8);
    for (std::uint32_t i = 1; i + 1 < def.vertex_rows; ++i)
      for (std::uint32_t j = 1; j + 1 < def.vertex_cols; ++j)
        def.displacements[std::size_t(i) * def.vertex_cols + j] = {
            std::int16_t(std::int64_t(rng() % 17) - 8), std::int16_t(std::int64_t(rng() % 17) - 8)};
    Slice a = warp(s, def);
    CHECK(a == warp(s, def));
    Slice b = inverse_warp(s, def);
    CHECK(b == inverse_warp(s, def));
    // totality is structural; also check outputs stay in the convex hull
    auto bounds = std::minmax_element(s.data().begin(), s.data().end());
    for (std::int32_t v : a.data()) {
      CHECK(v >= *bounds.first);
      CHECK(v <= *bounds.second);
    }
  }
}

TEST_CASE("estimation validates parameters") {
  Slice s = oracle::random_slice(2, 16, 16, 0, 10);
  Slice t = oracle::random_slice(2, 16, 17, 0, 10);
  CHECK_THROWS_AS(estimate_mesh(s, t, 8, 7, 8), ArgumentError);
  CHECK_THROWS_AS(estimate_mesh(s, s, 8, 6, 8), ArgumentError);   // even window
  CHECK_THROWS_AS(estimate_mesh(s, s, 8, 17, 8), ArgumentError);  // window > slice
  CHECK_THROWS_AS(estimate_mesh(s, s, 0, 7, 8), ArgumentError);
  CHECK_THROWS_AS(estimate_mesh(s, s, 8, 7, 128), ArgumentError);
}

TEST_CASE("mesh serialization round-trips and enforces the border pin") {
  PhantomSpec spec;
  spec.kind = PhantomKind::GlobalTranslation;
  spec.shift_y = 1;
  spec.shift_x = 2;
  spec.seed = 8;
  Volume v = generate_phantom(spec, 2, 33, 25, 12);
  MeshDeformation def = estimate_mesh(v.slice(0), v.slice(1), 8, 7, 8);
  wire::Writer w;
  serialize_mesh(w, def);
  CHECK(w.size() == 6 + 2 * def.displacements.size());
  wire::Reader r(w.buffer().data(), w.size(), "mem");
  CHECK(parse_mesh(r, 33, 25) == def);

  auto bytes = w.buffer();
  bytes[6] = 0x01;  // first border vertex dy
  wire::Reader bad(bytes.data(), bytes.size(), "mem");
  CHECK_THROWS_WITH_AS(parse_mesh(bad, 33, 25), doctest::Contains("border"), FormatError);
}

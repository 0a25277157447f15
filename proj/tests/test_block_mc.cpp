#include <doctest.h>

#include "core/block_mc.hpp"
#include "core/phantom.hpp"
#include "oracles.hpp"

using namespace mcwl;

namespace {

// Interior translation pair: cur(p) = ref(p - shift) wherever defined,
// built from a textured phantom slice.
std::pair<Slice, Slice> translated_pair(std::uint64_t seed, std::uint32_t rows,
                                        std::uint32_t cols, std::int32_t dy, std::int32_t dx) {
  PhantomSpec spec;
  spec.kind = PhantomKind::GlobalTranslation;
  spec.shift_y = dy;
  spec.shift_x = dx;
  spec.seed = seed;
  Volume v = generate_phantom(spec, 2, rows, cols, 12);
  return {v.slice(0), v.slice(1)};
}

MotionVectorField uniform_field(std::uint32_t rows, std::uint32_t cols, std::uint32_t b,
                                std::uint32_t r, MotionVec v) {
  MotionVectorField mvf;
  mvf.block_size = std::uint16_t(b);
  mvf.search_range = std::uint16_t(r);
  mvf.grid_rows = std::uint16_t((rows + b - 1) / b);
  mvf.grid_cols = std::uint16_t((cols + b - 1) / b);
  mvf.vectors.assign(std::size_t(mvf.grid_rows) * mvf.grid_cols, v);
  return mvf;
}

}  // namespace

TEST_CASE("identical slices give the zero field") {
  Slice s = oracle::random_slice(4, 24, 24, 0, 4095);
  MotionVectorField mvf = estimate_mvf(s, s, 8, 8);
  for (const MotionVec& v : mvf.vectors) {
    CHECK(v.dy == 0);
    CHECK(v.dx == 0);
  }
}

TEST_CASE("search range zero pins every vector") {
  Slice ref = oracle::random_slice(5, 16, 16, 0, 255);
  Slice cur = oracle::random_slice(6, 16, 16, 0, 255);
  MotionVectorField mvf = estimate_mvf(ref, cur, 4, 0);
  for (const MotionVec& v : mvf.vectors) {
    CHECK(v.dy == 0);
    CHECK(v.dx == 0);
  }
}

TEST_CASE("interior blocks track a global translation") {
  auto [ref, cur] = translated_pair(31, 64, 64, 2, 3);
  MotionVectorField mvf = estimate_mvf(ref, cur, 8, 8);
  CHECK(mvf.grid_rows == 8);
  CHECK(mvf.grid_cols == 8);
  // Blocks whose content and candidate window stay clear of the clamped
  // border band: source coordinates shift by -(2,3) into slice 0.
  for (std::uint32_t by = 1; by + 1 < 8; ++by) {
    for (std::uint32_t bx = 1; bx + 1 < 8; ++bx) {
      CHECK(mvf.at(by, bx).dy == -2);
      CHECK(mvf.at(by, bx).dx == -3);
    }
  }
}

TEST_CASE("estimated SADs equal the brute-force minimum") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Slice ref = oracle::random_slice(seed * 2, 32, 32, 0, 4095);
    Slice cur = oracle::random_slice(seed * 2 + 1, 32, 32, 0, 4095);
    MotionVectorField mvf = estimate_mvf(ref, cur, 8, 8);
    for (std::uint32_t by = 0; by < mvf.grid_rows; ++by) {
      for (std::uint32_t bx = 0; bx < mvf.grid_cols; ++bx) {
        const MotionVec& v = mvf.at(by, bx);
        const std::int32_t top = std::int32_t(by) * 8, left = std::int32_t(bx) * 8;
        const std::uint64_t got = oracle::sad_at(ref, cur, top, left, 8, 8, v.dy, v.dx);
        CHECK(got == oracle::min_sad(ref, cur, top, left, 8, 8, 8));
      }
    }
  }
}

TEST_CASE("clipped border blocks are searched too") {
  Slice ref = oracle::random_slice(9, 13, 11, 0, 255);  // 13x11 with b=4: clipped edges
  Slice cur = oracle::random_slice(10, 13, 11, 0, 255);
  MotionVectorField mvf = estimate_mvf(ref, cur, 4, 3);
  CHECK(mvf.grid_rows == 4);
  CHECK(mvf.grid_cols == 3);
  const std::uint64_t got = oracle::sad_at(ref, cur, 12, 8, 1, 3, mvf.at(3, 2).dy,
                                           mvf.at(3, 2).dx);
  CHECK(got == oracle::min_sad(ref, cur, 12, 8, 1, 3, 3));
}

TEST_CASE("warp with the zero field is the identity") {
  Slice ref = oracle::random_slice(12, 20, 20, -100, 100);
  MotionVectorField mvf = uniform_field(20, 20, 8, 0, {0, 0});
  CHECK(warp(ref, mvf) == ref);
  CHECK(warp(ref, mvf) == warp(ref, mvf));
}

TEST_CASE("uniform interior field reproduces the translated slice") {
  auto [ref, cur] = translated_pair(44, 48, 48, 2, 3);
  // (-2,-3) on the interior blocks; border blocks stay at zero so no
  // vector reads outside the reference.
  MotionVectorField mvf = uniform_field(48, 48, 8, 8, {0, 0});
  for (std::uint32_t by = 1; by + 1 < mvf.grid_rows; ++by)
    for (std::uint32_t bx = 1; bx + 1 < mvf.grid_cols; ++bx)
      mvf.vectors[std::size_t(by) * mvf.grid_cols + bx] = {-2, -3};
  Slice predicted = warp(ref, mvf);
  for (std::uint32_t m = 8; m < 40; ++m)
    for (std::uint32_t n = 8; n < 40; ++n) CHECK(predicted.at(m, n) == cur.at(m, n));
}

TEST_CASE("warp rejects vectors escaping the reference") {
  Slice ref = oracle::random_slice(1, 8, 8, 0, 10);
  MotionVectorField mvf = uniform_field(8, 8, 8, 9, {-9, 0});
  CHECK_THROWS_AS(warp(ref, mvf), ArgumentError);
}

TEST_CASE("inverse warp with the zero field is the identity") {
  Slice s = oracle::random_slice(13, 10, 10, -50, 50);
  MotionVectorField mvf = uniform_field(10, 10, 4, 0, {0, 0});
  CHECK(inverse_warp(s, mvf, FillMode::None) == s);
  CHECK(inverse_warp(s, mvf, FillMode::NearestNeighbor) == s);
}

TEST_CASE("hand-enumerated scatter of a 1x3 slice under field (0,1)") {
  Slice s(1, 3, {10, 20, 30});
  MotionVectorField mvf = uniform_field(1, 3, 8, 8, {0, 1});

  Slice none = inverse_warp(s, mvf, FillMode::None);
  CHECK(none.at(0, 0) == 0);   // unconnected
  CHECK(none.at(0, 1) == 10);  // from column 0
  CHECK(none.at(0, 2) == 20);  // from column 1

  Slice filled = inverse_warp(s, mvf, FillMode::NearestNeighbor);
  // Column 0 adopts the vector (0,1) of its nearest connected pixel and
  // reads s at column -1, clamped to 0.
  CHECK(filled.at(0, 0) == 10);
  CHECK(filled.at(0, 1) == 10);
  CHECK(filled.at(0, 2) == 20);
}

TEST_CASE("two blocks landing on the same region average with floor") {
  // 1x16 slice, b=8: block 0 shifts by +8 onto block 1's footprint.
  Slice s(1, 16);
  for (std::int32_t n = 0; n < 16; ++n) s.at(0, n) = (n % 3 == 0 ? -1 : 1) * (n + 1) * 3;
  MotionVectorField mvf = uniform_field(1, 16, 8, 8, {0, 0});
  mvf.vectors[0] = {0, 8};

  Slice got = inverse_warp(s, mvf, FillMode::None);
  for (std::int32_t n = 0; n < 8; ++n) CHECK(got.at(0, n) == 0);
  for (std::int32_t n = 8; n < 16; ++n) {
    const std::int64_t sum = s.at(0, n - 8) + s.at(0, n);
    CHECK(got.at(0, n) == floor_div(sum, 2));
  }

  oracle::ScatterOracle sc = oracle::scatter(s, mvf);
  CHECK(got == oracle::resolve_scatter(sc, s, false));
  CHECK(inverse_warp(s, mvf, FillMode::NearestNeighbor) ==
        oracle::resolve_scatter(sc, s, true));
}

TEST_CASE("scatter matches the list-based oracle on random fields") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t rows = 16 + rng() % 17, cols = 16 + rng() % 17;
    Slice s = oracle::random_slice(rng(), rows, cols, -2000, 2000);
    MotionVectorField mvf = uniform_field(rows, cols, 4, 6, {0, 0});
    for (MotionVec& v : mvf.vectors) {
      v.dy = std::int16_t(std::int64_t(rng() % 13) - 6);
      v.dx = std::int16_t(std::int64_t(rng() % 13) - 6);
    }
    oracle::ScatterOracle sc = oracle::scatter(s, mvf);

    Slice none = inverse_warp(s, mvf, FillMode::None);
    CHECK(none == oracle::resolve_scatter(sc, s, false));
    Slice filled = inverse_warp(s, mvf, FillMode::NearestNeighbor);
    CHECK(filled == oracle::resolve_scatter(sc, s, true));

    // Conservation: the collected contributions are exactly the
    // in-bounds scattered inputs.
    std::int64_t in_bounds = 0;
    for (std::int32_t m = 0; m < std::int32_t(rows); ++m) {
      for (std::int32_t n = 0; n < std::int32_t(cols); ++n) {
        const MotionVec& v = mvf.at(std::uint32_t(m) / 4, std::uint32_t(n) / 4);
        const std::int32_t ty = m + v.dy, tx = n + v.dx;
        if (ty >= 0 && ty < std::int32_t(rows) && tx >= 0 && tx < std::int32_t(cols))
          in_bounds += s.at(m, n);
      }
    }
    CHECK(sc.scattered_sum() == in_bounds);
  }
}

TEST_CASE("nearest-neighbor fill leaves no holes") {
  Slice s(8, 8);
  for (auto& v : s.data()) v = 7;  // strictly positive marks filled pixels
  MotionVectorField mvf = uniform_field(8, 8, 4, 4, {0, 0});
  mvf.vectors = {{3, 3}, {3, -3}, {-3, 3}, {-3, -3}};
  Slice none = inverse_warp(s, mvf, FillMode::None);
  std::size_t holes = 0;
  for (std::int32_t v : none.data()) holes += v == 0;
  CHECK(holes > 0);
  Slice filled = inverse_warp(s, mvf, FillMode::NearestNeighbor);
  for (std::int32_t v : filled.data()) CHECK(v == 7);
}

TEST_CASE("field serialization round-trips and validates") {
  Slice ref = oracle::random_slice(3, 20, 12, 0, 255);
  Slice cur = oracle::random_slice(4, 20, 12, 0, 255);
  MotionVectorField mvf = estimate_mvf(ref, cur, 8, 5);
  wire::Writer w;
  serialize_mvf(w, mvf);
  CHECK(w.size() == 8 + 2 * std::size_t(mvf.grid_rows) * mvf.grid_cols);
  wire::Reader r(w.buffer().data(), w.size(), "mem");
  CHECK(parse_mvf(r, 20, 12) == mvf);

  wire::Reader wrong_dims(w.buffer().data(), w.size(), "mem");
  CHECK_THROWS_AS(parse_mvf(wrong_dims, 29, 12), FormatError);

  auto bytes = w.buffer();
  bytes[8] = 0x7F;  // vector beyond the declared search range
  wire::Reader bad(bytes.data(), bytes.size(), "mem");
  CHECK_THROWS_AS(parse_mvf(bad, 20, 12), FormatError);
}

TEST_CASE("estimation validates parameters") {
  Slice a = oracle::random_slice(1, 8, 8, 0, 10);
  Slice b = oracle::random_slice(1, 8, 9, 0, 10);
  CHECK_THROWS_AS(estimate_mvf(a, b, 8, 8), ArgumentError);
  CHECK_THROWS_AS(estimate_mvf(a, a, 0, 8), ArgumentError);
  CHECK_THROWS_AS(estimate_mvf(a, a, 8, 128), ArgumentError);
}

#include <doctest.h>

#include <cmath>

#include "core/lifting.hpp"
#include "core/metrics.hpp"
#include "core/phantom.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace mcwl;

namespace {

Volume volume_1d(const std::vector<std::uint16_t>& samples, std::uint8_t bits = 8) {
  return Volume(std::uint32_t(samples.size()), 1, 1, bits, samples);
}

Volume random_volume(std::uint64_t seed, std::uint32_t k, std::uint32_t m, std::uint32_t n,
                     std::uint8_t bits) {
  return Volume(k, m, n, bits,
                oracle::random_voxels(seed, std::size_t(k) * m * n,
                                      std::uint16_t((1u << bits) - 1)));
}

Decomposition run_forward(const Volume& v, Method method,
                          RoundingMode rounding = RoundingMode::Paper) {
  TransformParams params;
  params.method = method;
  params.rounding = rounding;
  auto comp = make_compensator(params);
  return forward(v, *comp, rounding);
}

Volume run_inverse(const Decomposition& dec) {
  TransformParams params;
  params.method = dec.method;
  auto comp = make_compensator(params);
  return inverse(dec, *comp);
}

}  // namespace

TEST_CASE("mirror extension indices") {
  CHECK(mirror_index(-1, 8) == 1);
  CHECK(mirror_index(8, 8) == 6);
  CHECK(mirror_index(3, 8) == 3);
  CHECK(mirror_index(2, 2) == 0);
  CHECK(mirror_index(-1, 2) == 1);
}

TEST_CASE("constant volume is lowpass-only under the zero method") {
  Volume v(5, 3, 3, 8, std::vector<std::uint16_t>(45, 10));
  Decomposition dec = run_forward(v, Method::Zero);
  for (const Slice& h : dec.highpass)
    for (std::int32_t x : h.data()) CHECK(x == 0);
  for (const Slice& l : dec.lowpass)
    for (std::int32_t x : l.data()) CHECK(x == 10);
}

TEST_CASE("three-sample signal matches the boundary rule") {
  // f = [0, 5, 0]: H_0 = 5; the update mirrors H across both ends,
  // giving L_0 = 0 + floor((5+5)/4) = 2 and L_1 = 0 + floor((5+5)/4) = 2.
  Decomposition dec = run_forward(volume_1d({0, 5, 0}), Method::Zero);
  REQUIRE(dec.highpass.size() == 1);
  REQUIRE(dec.lowpass.size() == 2);
  CHECK(dec.highpass[0].at(0, 0) == 5);
  CHECK(dec.lowpass[0].at(0, 0) == 2);
  CHECK(dec.lowpass[1].at(0, 0) == 2);
  CHECK(run_inverse(dec) == volume_1d({0, 5, 0}));
}

TEST_CASE("two-sample signal") {
  Decomposition dec = run_forward(volume_1d({3, 7}), Method::Zero);
  CHECK(dec.highpass[0].at(0, 0) == 4);  // 7 - floor((3+3)/2)
  CHECK(dec.lowpass[0].at(0, 0) == 5);   // 3 + floor((4+4)/4)
}

TEST_CASE("update rounding offset distinguishes the two modes") {
  // f = [0, 5]: H_0 = 5; paper floor(10/4) = 2, jpeg2000 floor(12/4) = 3.
  Decomposition paper = run_forward(volume_1d({0, 5}), Method::Zero, RoundingMode::Paper);
  Decomposition jpeg = run_forward(volume_1d({0, 5}), Method::Zero, RoundingMode::Jpeg2000);
  CHECK(paper.lowpass[0].at(0, 0) == 2);
  CHECK(jpeg.lowpass[0].at(0, 0) == 3);
  CHECK(run_inverse(paper) == volume_1d({0, 5}));
  CHECK(run_inverse(jpeg) == volume_1d({0, 5}));
}

TEST_CASE("zero-method lifting equals the extended-signal oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::uint32_t k = 2 + seed % 9;
    std::vector<std::uint16_t> samples(
        oracle::random_voxels(seed * 13 + 1, k, 4095));
    std::vector<std::int64_t> signal(samples.begin(), samples.end());
    for (RoundingMode mode : {RoundingMode::Paper, RoundingMode::Jpeg2000}) {
      const std::int64_t offset = mode == RoundingMode::Jpeg2000 ? 2 : 0;
      oracle::IntLifting53 want = oracle::lift53_int(signal, offset);
      Decomposition dec = run_forward(volume_1d(samples, 12), Method::Zero, mode);
      REQUIRE(dec.highpass.size() == want.highpass.size());
      REQUIRE(dec.lowpass.size() == want.lowpass.size());
      for (std::size_t i = 0; i < want.highpass.size(); ++i)
        CHECK(dec.highpass[i].at(0, 0) == want.highpass[i]);
      for (std::size_t i = 0; i < want.lowpass.size(); ++i)
        CHECK(dec.lowpass[i].at(0, 0) == want.lowpass[i]);
    }
  }
}

TEST_CASE("float reference matches 5/3 convolution on interior samples") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::uint32_t k = 2 + std::uint32_t(seed * 7 % 63);
    std::vector<std::uint16_t> samples(oracle::random_voxels(seed + 99, k, 4095));
    std::vector<double> signal(samples.begin(), samples.end());
    oracle::Conv53 conv = oracle::convolve53(signal);
    FloatSubbands lift = forward_float_reference(volume_1d(samples, 12));
    for (std::size_t i = 0; i < lift.lowpass.size(); ++i) {
      const std::int64_t c = std::int64_t(2 * i);
      if (c - 2 < 0 || c + 2 >= std::int64_t(k)) continue;
      CHECK(std::abs(lift.lowpass[i][0] - conv.lowpass[i]) <= 1e-9);
    }
    for (std::size_t i = 0; i < lift.highpass.size(); ++i) {
      const std::int64_t c = std::int64_t(2 * i + 1);
      if (c - 1 < 0 || c + 1 >= std::int64_t(k)) continue;
      CHECK(std::abs(lift.highpass[i][0] - conv.highpass[i]) <= 1e-9);
    }
  }
}

TEST_CASE("constant signal: lowpass DC gain 1, highpass 0") {
  FloatSubbands f = forward_float_reference(volume_1d(std::vector<std::uint16_t>(9, 77)));
  for (const auto& l : f.lowpass) CHECK(l[0] == doctest::Approx(77.0).epsilon(1e-12));
  for (const auto& h : f.highpass) CHECK(h[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("impulse at an interior even index reproduces the filter taps") {
  std::vector<std::uint16_t> samples(16, 0);
  samples[6] = 8;  // even position, support fully interior
  FloatSubbands f = forward_float_reference(volume_1d(samples));
  // Even-phase taps of the 5-tap lowpass land on lowpass outputs 2,3,4:
  // {-1/8, 6/8, -1/8} times 8; the 2/8 taps sit at odd offsets.
  CHECK(f.lowpass[1][0] == doctest::Approx(0.0));
  CHECK(f.lowpass[2][0] == doctest::Approx(-1.0));
  CHECK(f.lowpass[3][0] == doctest::Approx(6.0));
  CHECK(f.lowpass[4][0] == doctest::Approx(-1.0));
  CHECK(f.lowpass[5][0] == doctest::Approx(0.0));
  CHECK(f.highpass[2][0] == doctest::Approx(-4.0));  // -1/2 * 8
  CHECK(f.highpass[3][0] == doctest::Approx(-4.0));
  CHECK(f.highpass[1][0] == doctest::Approx(0.0));
  // and the convolution oracle agrees everywhere
  std::vector<double> signal(samples.begin(), samples.end());
  oracle::Conv53 conv = oracle::convolve53(signal);
  for (std::size_t i = 0; i < f.lowpass.size(); ++i)
    CHECK(f.lowpass[i][0] == doctest::Approx(conv.lowpass[i]).epsilon(1e-12));
  for (std::size_t i = 0; i < f.highpass.size(); ++i)
    CHECK(f.highpass[i][0] == doctest::Approx(conv.highpass[i]).epsilon(1e-12));
}

TEST_CASE("perfect reconstruction for all methods on random volumes") {
  int cases = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::uint32_t k = 2 + std::uint32_t(seed * 3 % 11);
    const std::uint8_t bits = seed % 2 ? 12 : 8;
    Volume v = random_volume(seed, k, 16, 16, bits);
    for (Method method : {Method::Zero, Method::Block, Method::BlockFill, Method::Mesh}) {
      for (RoundingMode mode : {RoundingMode::Paper, RoundingMode::Jpeg2000}) {
        Decomposition dec = run_forward(v, method, mode);
        CHECK(dec.lowpass.size() == (k + 1) / 2);
        CHECK(dec.highpass.size() == k / 2);
        CHECK(run_inverse(dec) == v);
        ++cases;
      }
    }
  }
  CHECK(cases == 64);
}

TEST_CASE("perfect reconstruction on the elliptic phantom with the mesh method") {
  PhantomSpec spec;
  spec.kind = PhantomKind::EllipticDeformation;
  spec.amplitude = 2;
  spec.noise_amplitude = 6;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    spec.seed = seed;
    Volume v = generate_phantom(spec, 7, 48, 48, 12);
    Decomposition dec = run_forward(v, Method::Mesh);
    CHECK(run_inverse(dec) == v);
  }
}

TEST_CASE("forward is deterministic including motion records") {
  Volume v = random_volume(77, 6, 24, 24, 12);
  for (Method method : {Method::Block, Method::BlockFill, Method::Mesh}) {
    Decomposition a = run_forward(v, method);
    Decomposition b = run_forward(v, method);
    CHECK(encode_decomposition(a) == encode_decomposition(b));
  }
}

TEST_CASE("coefficients stay within the widened slice range") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Volume v = random_volume(seed + 50, 5, 12, 12, 16);
    for (Method method : {Method::Zero, Method::Block}) {
      Decomposition dec = run_forward(v, method);
      const std::int64_t bound = std::int64_t(1) << (v.bit_depth() + 2);
      for (const Slice& h : dec.highpass)
        for (std::int32_t x : h.data()) CHECK(std::abs(std::int64_t(x)) <= bound);
      for (const Slice& l : dec.lowpass)
        for (std::int32_t x : l.data()) CHECK(std::abs(std::int64_t(x)) <= bound);
    }
  }
}

TEST_CASE("block compensation cancels the highpass interior on a translating phantom") {
  PhantomSpec spec;
  spec.kind = PhantomKind::GlobalTranslation;
  spec.shift_y = 2;
  spec.shift_x = 3;
  spec.seed = 21;
  const std::uint32_t slices = 6, rows = 96, cols = 96;
  Volume v = generate_phantom(spec, slices, rows, cols, 12);
  Decomposition dec = run_forward(v, Method::Block);
  // Stay clear of the cumulative clamp band and of block-search border
  // effects: cumulative shift <= 18 voxels plus search range 8.
  const std::uint32_t margin = 32;
  for (const Slice& h : dec.highpass)
    for (std::uint32_t m = margin; m < rows - margin; ++m)
      for (std::uint32_t n = margin; n < cols - margin; ++n) CHECK(h.at(m, n) == 0);
}

TEST_CASE("forward requires at least two slices") {
  Volume v(1, 2, 2, 8, {1, 2, 3, 4});
  TransformParams params;
  auto comp = make_compensator(params);
  CHECK_THROWS_AS(forward(v, *comp), ArgumentError);
}

TEST_CASE("inverse rejects a mismatched compensator") {
  Volume v = random_volume(3, 4, 8, 8, 8);
  Decomposition dec = run_forward(v, Method::Block);
  TransformParams params;
  params.method = Method::Mesh;
  auto comp = make_compensator(params);
  CHECK_THROWS_AS(inverse(dec, *comp), ArgumentError);
}

TEST_CASE("decomposition files round-trip") {
  testutil::TempDir dir;
  Volume v = random_volume(8, 5, 17, 13, 12);  // odd dims exercise clipped grids
  for (Method method : {Method::Zero, Method::Block, Method::BlockFill, Method::Mesh}) {
    Decomposition dec = run_forward(v, method, RoundingMode::Jpeg2000);
    const auto path = dir.file("d.mcwd");
    save_decomposition(dec, path);
    Decomposition loaded = load_decomposition(path);
    CHECK(encode_decomposition(loaded) == encode_decomposition(dec));
    CHECK(loaded.rounding == RoundingMode::Jpeg2000);
    CHECK(run_inverse(loaded) == v);
  }
}

TEST_CASE("decomposition decode rejects malformed payloads") {
  Volume v = random_volume(4, 4, 8, 8, 8);
  auto bytes = encode_decomposition(run_forward(v, Method::Block));

  auto bad_magic = bytes;
  bad_magic[0] = 'Z';
  CHECK_THROWS_WITH_AS(decode_decomposition(bad_magic, "mem"), doctest::Contains("bad magic"),
                       FormatError);

  auto bad_method = bytes;
  bad_method[5] = 9;
  CHECK_THROWS_AS(decode_decomposition(bad_method, "mem"), FormatError);

  auto truncated = bytes;
  truncated.resize(truncated.size() / 2);
  CHECK_THROWS_AS(decode_decomposition(truncated, "mem"), FormatError);

  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(decode_decomposition(trailing, "mem"), FormatError);
}

TEST_CASE("corrupt coefficients never silently reconstruct the original") {
  Volume v = random_volume(10, 4, 8, 8, 12);
  Decomposition dec = run_forward(v, Method::Block);
  auto bytes = encode_decomposition(dec);
  bytes[20] ^= 0x01;  // lowest byte of the first lowpass coefficient
  bool detected = false;
  try {
    Decomposition corrupt = decode_decomposition(bytes, "mem");
    detected = !(run_inverse(corrupt) == v);
  } catch (const Error&) {
    detected = true;
  }
  CHECK(detected);
}

#ifndef MCWL_CORE_RNG_HPP
#define MCWL_CORE_RNG_HPP

#include <cstdint>

namespace mcwl {

// Stateless 64-bit mix (splitmix64 finalizer). Used to hash lattice
// coordinates for procedural phantom textures.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// xorshift64* stream. The exact constants are part of the phantom
// contract (documented in the README) so independent implementations
// can reproduce the same volumes.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
  }

  // Uniform integer in [0, bound), bound >= 1. Modulo bias is irrelevant
  // at the bounds used here (<< 2^32) and keeps the stream specifiable.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace mcwl

#endif

#ifndef MCWL_CORE_COMPENSATOR_HPP
#define MCWL_CORE_COMPENSATOR_HPP

#include <memory>
#include <variant>

#include "block_mc.hpp"
#include "mesh_mc.hpp"
#include "types.hpp"

namespace mcwl {

// Motion description for one (reference -> current) slice pair in the
// owning method's native representation. Zero compensation stores
// nothing.
using MotionRecord = std::variant<std::monostate, MotionVectorField, MeshDeformation>;

// Estimation plus the forward/inverse warping pair used by the lifting.
// warp and inverse_warp must be deterministic pure functions of the
// slice and the record; that alone guarantees the lifting inverts.
class Compensator {
 public:
  virtual ~Compensator() = default;
  virtual Method method() const = 0;
  virtual MotionRecord estimate(const Slice& ref, const Slice& cur) const = 0;
  virtual Slice warp(const Slice& ref, const MotionRecord& rec) const = 0;
  virtual Slice inverse_warp(const Slice& s, const MotionRecord& rec) const = 0;
};

struct TransformParams {
  Method method = Method::Zero;
  std::uint32_t block_size = 8;
  std::uint32_t search_range = 8;
  std::uint32_t grid_spacing = 8;
  std::uint32_t vertex_block = 7;
  RoundingMode rounding = RoundingMode::Paper;
};

std::unique_ptr<Compensator> make_compensator(const TransformParams& params);

}  // namespace mcwl

#endif

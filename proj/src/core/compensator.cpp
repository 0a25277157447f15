#include "compensator.hpp"

namespace mcwl {

namespace {

class ZeroCompensator final : public Compensator {
 public:
  Method method() const override { return Method::Zero; }
  MotionRecord estimate(const Slice&, const Slice&) const override { return std::monostate{}; }
  Slice warp(const Slice& ref, const MotionRecord& rec) const override {
    require_empty(rec);
    return ref;
  }
  Slice inverse_warp(const Slice& s, const MotionRecord& rec) const override {
    require_empty(rec);
    return s;
  }

 private:
  static void require_empty(const MotionRecord& rec) {
    if (!std::holds_alternative<std::monostate>(rec))
      throw ArgumentError("zero compensation cannot consume a motion record");
  }
};

class BlockCompensator final : public Compensator {
 public:
  BlockCompensator(std::uint32_t block_size, std::uint32_t search_range, FillMode fill)
      : block_size_(block_size), search_range_(search_range), fill_(fill) {}

  Method method() const override {
    return fill_ == FillMode::None ? Method::Block : Method::BlockFill;
  }
  MotionRecord estimate(const Slice& ref, const Slice& cur) const override {
    return estimate_mvf(ref, cur, block_size_, search_range_);
  }
  Slice warp(const Slice& ref, const MotionRecord& rec) const override {
    return mcwl::warp(ref, field(rec));
  }
  Slice inverse_warp(const Slice& s, const MotionRecord& rec) const override {
    return mcwl::inverse_warp(s, field(rec), fill_);
  }

 private:
  static const MotionVectorField& field(const MotionRecord& rec) {
    if (const auto* f = std::get_if<MotionVectorField>(&rec)) return *f;
    throw ArgumentError("block compensation requires a block motion record");
  }

  std::uint32_t block_size_;
  std::uint32_t search_range_;
  FillMode fill_;
};

class MeshCompensator final : public Compensator {
 public:
  MeshCompensator(std::uint32_t grid_spacing, std::uint32_t vertex_block,
                  std::uint32_t search_range)
      : grid_spacing_(grid_spacing), vertex_block_(vertex_block), search_range_(search_range) {}

  Method method() const override { return Method::Mesh; }
  MotionRecord estimate(const Slice& ref, const Slice& cur) const override {
    return estimate_mesh(ref, cur, grid_spacing_, vertex_block_, search_range_);
  }
  Slice warp(const Slice& ref, const MotionRecord& rec) const override {
    return mcwl::warp(ref, deformation(rec));
  }
  Slice inverse_warp(const Slice& s, const MotionRecord& rec) const override {
    return mcwl::inverse_warp(s, deformation(rec));
  }

 private:
  static const MeshDeformation& deformation(const MotionRecord& rec) {
    if (const auto* d = std::get_if<MeshDeformation>(&rec)) return *d;
    throw ArgumentError("mesh compensation requires a mesh motion record");
  }

  std::uint32_t grid_spacing_;
  std::uint32_t vertex_block_;
  std::uint32_t search_range_;
};

}  // namespace

std::unique_ptr<Compensator> make_compensator(const TransformParams& params) {
  switch (params.method) {
    case Method::Zero:
      return std::make_unique<ZeroCompensator>();
    case Method::Block:
      return std::make_unique<BlockCompensator>(params.block_size, params.search_range,
                                                FillMode::None);
    case Method::BlockFill:
      return std::make_unique<BlockCompensator>(params.block_size, params.search_range,
                                                FillMode::NearestNeighbor);
    case Method::Mesh:
      return std::make_unique<MeshCompensator>(params.grid_spacing, params.vertex_block,
                                               params.search_range);
  }
  throw ArgumentError("unknown compensation method");
}

}  // namespace mcwl

#ifndef MCWL_CORE_TYPES_HPP
#define MCWL_CORE_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcwl {

// Displacement compensation method applied around the lifting steps.
enum class Method : std::uint8_t {
  Zero = 0,       // plain lifting, no compensation
  Block = 1,      // block matching, holes left unfilled in the inversion
  BlockFill = 2,  // block matching + nearest-neighbor vector-field hole filling
  Mesh = 3,       // control-grid deformation
};

// Rounding convention for the update step of the integer lifting.
enum class RoundingMode : std::uint8_t {
  Paper = 0,     // floor(sum / 4)
  Jpeg2000 = 1,  // floor((sum + 2) / 4)
};

const char* method_name(Method m);
bool parse_method(const std::string& text, Method& out);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Malformed or corrupt file contents.
struct FormatError : Error {
  using Error::Error;
};
// Operating-system level read/write failure.
struct IoError : Error {
  using Error::Error;
};
// Parameter or dimension violations.
struct ArgumentError : Error {
  using Error::Error;
};
// Metric undefined for the given input (zero subband variance).
struct DegenerateError : Error {
  using Error::Error;
};

// Floor division toward -inf for possibly negative numerators.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// Working representation for slices of the signal and of the subbands.
// Holds signed values since highpass coefficients go negative.
class Slice {
 public:
  Slice() = default;
  Slice(std::uint32_t rows, std::uint32_t cols)
      : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}
  Slice(std::uint32_t rows, std::uint32_t cols, std::vector<std::int32_t> data);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  std::int32_t& at(std::uint32_t r, std::uint32_t c) { return data_[std::size_t(r) * cols_ + c]; }
  std::int32_t at(std::uint32_t r, std::uint32_t c) const { return data_[std::size_t(r) * cols_ + c]; }

  const std::vector<std::int32_t>& data() const { return data_; }
  std::vector<std::int32_t>& data() { return data_; }

  bool same_dims(const Slice& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }
  friend bool operator==(const Slice&, const Slice&) = default;

 private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::vector<std::int32_t> data_;
};

// One integer displacement (row offset, column offset).
struct MotionVec {
  std::int16_t dy = 0;
  std::int16_t dx = 0;
  friend bool operator==(const MotionVec&, const MotionVec&) = default;
};

}  // namespace mcwl

#endif

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lfseg/errors.hpp"

namespace lfseg {

// Dense 2-D grid of doubles in row-major order. Carrier for images, level
// sets, fitting functions and force fields. Indexing is (x, y) with x the
// column and y the row, both 0-based.
class ScalarField2D {
 public:
  ScalarField2D() = default;
  ScalarField2D(int width, int height, double fill = 0.0)
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
      throw ParameterError("ScalarField2D: dimensions must be positive");
    values_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  double& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  const std::vector<double>& values() const { return values_; }

  bool same_shape(const ScalarField2D& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool all_finite() const {
    for (double v : values_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

// Binary segmentation mask, same layout as ScalarField2D, values 0 or 1.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  BinaryMask() = default;
  BinaryMask(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }

  bool operator==(const BinaryMask& other) const = default;
};

}  // namespace lfseg

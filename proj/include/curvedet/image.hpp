#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace curvedet {

// Pixel and accumulator type. Source rasters are 8-bit, smoothed rasters are
// fixed point with scale 256; 64 bits leave ample headroom for Hough sums.
using Pixel = std::int64_t;

// Row-major raster of non-negative integers.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Pixel fill = 0);
  Image(int width, int height, std::vector<Pixel> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  Pixel at(int x, int y) const { return pixels_[index(x, y)]; }
  Pixel& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const Pixel> row(int y) const {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<Pixel> row(int y) {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const Pixel> pixels() const { return pixels_; }

  Pixel sum() const;
  Pixel max_value() const;

  bool operator==(const Image&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> pixels_;
};

}  // namespace curvedet

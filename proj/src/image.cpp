#include "curvedet/image.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "curvedet/error.hpp"

namespace curvedet {

Image::Image(int width, int height, Pixel fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidParameter("image dimensions must be non-negative");
  if (fill < 0) throw InvalidParameter("pixel values must be non-negative");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image::Image(int width, int height, std::vector<Pixel> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0) throw InvalidParameter("image dimensions must be non-negative");
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InvalidParameter("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                           std::to_string(width) + "x" + std::to_string(height));
  }
  if (std::any_of(pixels_.begin(), pixels_.end(), [](Pixel p) { return p < 0; })) {
    throw InvalidParameter("pixel values must be non-negative");
  }
}

Pixel Image::sum() const { return std::accumulate(pixels_.begin(), pixels_.end(), Pixel{0}); }

Pixel Image::max_value() const {
  return pixels_.empty() ? 0 : *std::max_element(pixels_.begin(), pixels_.end());
}

}  // namespace curvedet

#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "curvedet/image.hpp"
#include "curvedet/raster.hpp"

namespace curvedet {

// Hough image of one band for mostly vertical segments. Cell (x, shift)
// holds the pixel sum along the dyadic pattern that starts at column x on
// the band top and ends at column x + band_height - shift on the band
// bottom; shift runs over [0, 2 * band_height].
//
// Storage is column-major so a fixed-x column over all shifts is contiguous.
class HoughImage {
 public:
  HoughImage() = default;
  HoughImage(int width, int band_height);

  int width() const { return width_; }
  int band_height() const { return band_height_; }
  int shift_count() const { return 2 * band_height_ + 1; }

  Pixel at(int x, int shift) const { return cells_[index(x, shift)]; }
  Pixel& at(int x, int shift) { return cells_[index(x, shift)]; }

  std::span<const Pixel> column(int x) const {
    return {cells_.data() + index(x, 0), static_cast<std::size_t>(shift_count())};
  }
  std::span<Pixel> column(int x) {
    return {cells_.data() + index(x, 0), static_cast<std::size_t>(shift_count())};
  }
  std::span<const Pixel> cells() const { return cells_; }
  void fill(Pixel value) { std::fill(cells_.begin(), cells_.end(), value); }

  bool operator==(const HoughImage&) const = default;

 private:
  std::size_t index(int x, int shift) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(shift_count()) +
           static_cast<std::size_t>(shift);
  }

  int width_ = 0;
  int band_height_ = 0;
  std::vector<Pixel> cells_;
};

// H_0 ... H_{k-1}, top band first. All members share width and band height.
struct HoughStack {
  int width = 0;
  int band_height = 0;
  std::vector<HoughImage> images;

  int size() const { return static_cast<int>(images.size()); }
  bool operator==(const HoughStack&) const = default;
};

struct PatternPixel {
  int x = 0;
  int y = 0;
  bool operator==(const PatternPixel&) const = default;
};

// Pixels of the dyadic pattern from (x_top, 0) displaced right by
// `displacement` over `height` rows: one pixel per row, columns
// non-decreasing. The upper half takes floor(t/2), the lower half ceil(t/2).
std::vector<PatternPixel> dyadic_pattern(int x_top, int displacement, int height);

// Butterfly FHT over both leanings. Pattern pixels outside the band count 0.
HoughImage fht_band(const Image& band);

HoughStack fht_stack(const BandStack& bands, int threads = 1);

struct SegmentEnds {
  int x_top = 0;
  int x_bottom = 0;
};

// x_bottom = band_height - shift + x_top.
SegmentEnds segment_endpoints(int x_top, int shift, int band_height);

// Inclination in degrees of a segment with the given shift; positive when
// the segment leans left going down (x_top > x_bottom).
double shift_angle(double shift, int band_height);

// Inverse of shift_angle. Throws InvalidParameter for |angle| > 45.
double angle_shift(double angle_deg, int band_height);

}  // namespace curvedet

#pragma once

#include <vector>

#include "curvedet/image.hpp"

namespace curvedet {

// Fixed-point scale of smoothed planes.
inline constexpr Pixel kSmoothScale = 256;

// Horizontal k-division of an image. Every band is `extended_width` wide
// (original width plus `band_height` zero columns on the right) and
// `band_height` tall, a power of two. Rows past the image bottom are zero.
struct BandStack {
  int band_count = 0;
  int band_height = 0;
  int extended_width = 0;
  int pad_rows = 0;
  int original_width = 0;
  int original_height = 0;
  std::vector<Image> bands;
};

// Band height used for an image of height h split into k bands:
// ceil(h / k) rounded up to a power of two.
int band_height_for(int height, int band_count);

// Convolves every row with a normalized Gaussian of radius ceil(3 sigma),
// zero padded, and returns the result in fixed point (x256, rounded half away
// from zero). sigma == 0 scales the input by 256.
Image gaussian_rows(const Image& img, double sigma, int threads = 1);

// The normalized kernel gaussian_rows uses, indexed from -radius to radius.
std::vector<double> gaussian_kernel(double sigma);

BandStack split_into_bands(const Image& img, int band_count);

Image flip_vertical(const Image& img);
Image transpose(const Image& img);

// 3x3 dilation minus 3x3 erosion; borders use only in-raster neighbours.
Image morphological_gradient(const Image& img);

}  // namespace curvedet

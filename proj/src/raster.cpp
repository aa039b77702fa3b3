#include "curvedet/raster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "curvedet/error.hpp"
#include "curvedet/parallel.hpp"

namespace curvedet {

int band_height_for(int height, int band_count) {
  if (band_count <= 0 || band_count > height) {
    throw InvalidParameter("band count must lie in [1, image height]");
  }
  const int rows = (height + band_count - 1) / band_count;
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(rows)));
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidParameter("sigma must be >= 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  if (radius == 0) {
    kernel[0] = 1.0;
    return kernel;
  }
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-static_cast<double>(i) * i / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = v;
    total += v;
  }
  for (double& v : kernel) v /= total;
  return kernel;
}

Image gaussian_rows(const Image& img, double sigma, int threads) {
  const std::vector<double> kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int w = img.width();
  Image out(w, img.height());
  if (radius == 0) {
    for (int y = 0; y < img.height(); ++y) {
      auto src = img.row(y);
      auto dst = out.row(y);
      for (int x = 0; x < w; ++x) dst[x] = src[x] * kSmoothScale;
    }
    return out;
  }
  parallel_for(0, img.height(), threads, [&](int y_begin, int y_end) {
    for (int y = y_begin; y < y_end; ++y) {
      auto src = img.row(y);
      auto dst = out.row(y);
      for (int x = 0; x < w; ++x) {
        const int lo = std::max(0, x - radius);
        const int hi = std::min(w - 1, x + radius);
        double acc = 0.0;
        for (int j = lo; j <= hi; ++j) {
          acc += kernel[static_cast<std::size_t>(j - x + radius)] * static_cast<double>(src[j]);
        }
        // llround rounds halfway cases away from zero.
        dst[x] = static_cast<Pixel>(std::llround(acc * static_cast<double>(kSmoothScale)));
      }
    }
  });
  return out;
}

BandStack split_into_bands(const Image& img, int band_count) {
  BandStack stack;
  stack.band_height = band_height_for(img.height(), band_count);
  stack.band_count = band_count;
  stack.original_width = img.width();
  stack.original_height = img.height();
  stack.extended_width = img.width() + stack.band_height;
  stack.pad_rows = band_count * stack.band_height - img.height();
  stack.bands.reserve(static_cast<std::size_t>(band_count));
  for (int i = 0; i < band_count; ++i) {
    Image band(stack.extended_width, stack.band_height);
    for (int y = 0; y < stack.band_height; ++y) {
      const int src_y = i * stack.band_height + y;
      if (src_y >= img.height()) break;
      std::copy_n(img.row(src_y).begin(), img.width(), band.row(y).begin());
    }
    stack.bands.push_back(std::move(band));
  }
  return stack;
}

Image flip_vertical(const Image& img) {
  Image out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    std::copy_n(img.row(y).begin(), img.width(), out.row(img.height() - 1 - y).begin());
  }
  return out;
}

Image transpose(const Image& img) {
  Image out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.at(y, x) = img.at(x, y);
  }
  return out;
}

Image morphological_gradient(const Image& img) {
  Image out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      Pixel lo = img.at(x, y);
      Pixel hi = lo;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= img.width() || ny >= img.height()) continue;
          lo = std::min(lo, img.at(nx, ny));
          hi = std::max(hi, img.at(nx, ny));
        }
      }
      out.at(x, y) = hi - lo;
    }
  }
  return out;
}

}  // namespace curvedet

#include "curvedet/hough.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "curvedet/error.hpp"
#include "curvedet/parallel.hpp"

namespace curvedet {

namespace {

bool is_power_of_two(int n) { return n > 0 && std::has_single_bit(static_cast<unsigned>(n)); }

void append_pattern(std::vector<PatternPixel>& out, int x, int t, int n, int y0) {
  if (n == 1) {
    out.push_back({x, y0});
    return;
  }
  const int half = n / 2;
  const int upper = t / 2;
  append_pattern(out, x, upper, half, y0);
  append_pattern(out, x + upper, t - upper, half, y0 + half);
}

// Right-leaning transform: result[t * W + x] is the sum over
// dyadic_pattern(x, t, s) for t in [0, s].
std::vector<Pixel> right_leaning(const Image& band, bool mirrored) {
  const int width = band.width();
  const int height = band.height();
  const auto w = static_cast<std::size_t>(width);

  // Blocks of m rows; each block stores (m + 1) displacement rows of width W.
  std::vector<Pixel> cur(static_cast<std::size_t>(height) * 2 * w);
  for (int r = 0; r < height; ++r) {
    const auto src = band.row(r);
    Pixel* t0 = cur.data() + (static_cast<std::size_t>(r) * 2) * w;
    Pixel* t1 = t0 + w;
    for (int x = 0; x < width; ++x) {
      const Pixel v = mirrored ? src[width - 1 - x] : src[x];
      t0[x] = v;
      t1[x] = v;
    }
  }

  std::vector<Pixel> next;
  for (int m = 1; m < height; m *= 2) {
    const int merged = 2 * m;
    const int blocks = height / merged;
    next.assign(static_cast<std::size_t>(blocks) * static_cast<std::size_t>(merged + 1) * w, 0);
    for (int b = 0; b < blocks; ++b) {
      const Pixel* top = cur.data() + static_cast<std::size_t>(2 * b) * (m + 1) * w;
      const Pixel* bottom = cur.data() + static_cast<std::size_t>(2 * b + 1) * (m + 1) * w;
      Pixel* dst_block = next.data() + static_cast<std::size_t>(b) * (merged + 1) * w;
      for (int t = 0; t <= merged; ++t) {
        const int upper = t / 2;
        const int lower = t - upper;
        const Pixel* a = top + static_cast<std::size_t>(upper) * w;
        const Pixel* c = bottom + static_cast<std::size_t>(lower) * w;
        Pixel* dst = dst_block + static_cast<std::size_t>(t) * w;
        const int limit = width - upper;
        for (int x = 0; x < limit; ++x) dst[x] = a[x] + c[x + upper];
        for (int x = std::max(limit, 0); x < width; ++x) dst[x] = a[x];
      }
    }
    cur.swap(next);
  }
  return cur;
}

}  // namespace

HoughImage::HoughImage(int width, int band_height) : width_(width), band_height_(band_height) {
  if (width < 0 || band_height < 1) throw InvalidParameter("invalid Hough image geometry");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(shift_count()), 0);
}

std::vector<PatternPixel> dyadic_pattern(int x_top, int displacement, int height) {
  if (!is_power_of_two(height)) throw InvalidParameter("pattern height must be a power of two");
  if (displacement < 0 || displacement > height) {
    throw InvalidParameter("displacement " + std::to_string(displacement) + " outside [0, " +
                           std::to_string(height) + "]");
  }
  std::vector<PatternPixel> out;
  out.reserve(static_cast<std::size_t>(height));
  append_pattern(out, x_top, displacement, height, 0);
  return out;
}

HoughImage fht_band(const Image& band) {
  const int s = band.height();
  if (!is_power_of_two(s)) {
    throw InvalidParameter("band height " + std::to_string(s) + " is not a power of two");
  }
  assert(band.max_value() <= std::numeric_limits<Pixel>::max() / s);

  const int width = band.width();
  const auto w = static_cast<std::size_t>(width);
  const std::vector<Pixel> right = right_leaning(band, false);
  const std::vector<Pixel> left = right_leaning(band, true);

  HoughImage out(width, s);
  for (int x = 0; x < width; ++x) {
    auto col = out.column(x);
    for (int shift = 0; shift <= s; ++shift) {
      col[static_cast<std::size_t>(shift)] = right[static_cast<std::size_t>(s - shift) * w + x];
    }
    const std::size_t mirror_x = w - 1 - static_cast<std::size_t>(x);
    for (int shift = s + 1; shift <= 2 * s; ++shift) {
      col[static_cast<std::size_t>(shift)] = left[static_cast<std::size_t>(shift - s) * w + mirror_x];
    }
  }
  return out;
}

HoughStack fht_stack(const BandStack& bands, int threads) {
  HoughStack stack;
  stack.width = bands.extended_width;
  stack.band_height = bands.band_height;
  stack.images.resize(bands.bands.size());
  parallel_for(0, static_cast<int>(bands.bands.size()), threads, [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      stack.images[static_cast<std::size_t>(i)] = fht_band(bands.bands[static_cast<std::size_t>(i)]);
    }
  });
  return stack;
}

SegmentEnds segment_endpoints(int x_top, int shift, int band_height) {
  return {x_top, band_height - shift + x_top};
}

double shift_angle(double shift, int band_height) {
  const double s = band_height;
  return std::atan((shift - s) / s) * 180.0 / std::numbers::pi;
}

double angle_shift(double angle_deg, int band_height) {
  if (!(std::abs(angle_deg) <= 45.0)) throw InvalidParameter("inclination must lie in [-45, 45]");
  const double s = band_height;
  return s + s * std::tan(angle_deg * std::numbers::pi / 180.0);
}

}  // namespace curvedet

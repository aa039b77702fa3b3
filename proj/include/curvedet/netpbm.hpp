#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvedet/image.hpp"
#include "curvedet/polyline_dp.hpp"

namespace curvedet {

class NetpbmError : public std::runtime_error {
 public:
  explicit NetpbmError(const std::string& what) : std::runtime_error(what) {}
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  Rgb at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const RgbImage&) const = default;
};

// Binary P5. Reads maxval 1..255, writes 255; values above 255 saturate.
Image read_pgm(std::istream& in);
Image read_pgm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const Image& img);
void write_pgm(const std::filesystem::path& path, const Image& img);

// Binary P6, same maxval rules.
RgbImage read_ppm(std::istream& in);
RgbImage read_ppm(const std::filesystem::path& path);
void write_ppm(std::ostream& out, const RgbImage& img);
void write_ppm(const std::filesystem::path& path, const RgbImage& img);

// Grey copy of an 8-bit image; values above 255 saturate.
RgbImage to_rgb(const Image& img);

// Midpoint (Bresenham) rasterization of a segment, clipped to the image.
void draw_segment(RgbImage& img, Vertex from, Vertex to, Rgb color);
void draw_polyline(RgbImage& img, const ScoredPolyline& polyline, Rgb color);

}  // namespace curvedet

#include "curvedet/netpbm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace curvedet {

namespace {

void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in, const char* field) {
  skip_space_and_comments(in);
  int value = -1;
  if (!(in >> value) || value < 0) throw NetpbmError(std::string("malformed header field: ") + field);
  return value;
}

struct Header {
  int width = 0;
  int height = 0;
};

Header read_header(std::istream& in, const char* magic) {
  char m[2] = {0, 0};
  if (!in.read(m, 2) || m[0] != magic[0] || m[1] != magic[1]) {
    throw NetpbmError(std::string("expected ") + magic + " magic number");
  }
  Header h;
  h.width = read_header_int(in, "width");
  h.height = read_header_int(in, "height");
  if (h.width == 0 || h.height == 0) throw NetpbmError("image dimensions must be positive");
  const int maxval = read_header_int(in, "maxval");
  if (maxval < 1 || maxval > 255) throw NetpbmError("only 8-bit maxval (1..255) is supported");
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) throw NetpbmError("missing whitespace after header");
  return h;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NetpbmError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NetpbmError("cannot write " + path.string());
  return out;
}

std::uint8_t saturate(Pixel v) { return static_cast<std::uint8_t>(std::clamp<Pixel>(v, 0, 255)); }

}  // namespace

Image read_pgm(std::istream& in) {
  const Header h = read_header(in, "P5");
  std::vector<unsigned char> raw(static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height));
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw NetpbmError("truncated P5 pixel data");
  }
  return Image(h.width, h.height, std::vector<Pixel>(raw.begin(), raw.end()));
}

Image read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const Image& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<char> raw(img.pixels().size());
  std::transform(img.pixels().begin(), img.pixels().end(), raw.begin(),
                 [](Pixel v) { return static_cast<char>(saturate(v)); });
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!out) throw NetpbmError("failed writing P5 data");
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
  auto out = open_out(path);
  write_pgm(out, img);
}

RgbImage read_ppm(std::istream& in) {
  const Header h = read_header(in, "P6");
  RgbImage img{h.width, h.height, {}};
  std::vector<unsigned char> raw(static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height) * 3);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw NetpbmError("truncated P6 pixel data");
  }
  img.pixels.resize(raw.size() / 3);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
  }
  return img;
}

RgbImage read_ppm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_ppm(in);
}

void write_ppm(std::ostream& out, const RgbImage& img) {
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  std::vector<char> raw;
  raw.reserve(img.pixels.size() * 3);
  for (const Rgb& p : img.pixels) {
    raw.push_back(static_cast<char>(p.r));
    raw.push_back(static_cast<char>(p.g));
    raw.push_back(static_cast<char>(p.b));
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!out) throw NetpbmError("failed writing P6 data");
}

void write_ppm(const std::filesystem::path& path, const RgbImage& img) {
  auto out = open_out(path);
  write_ppm(out, img);
}

RgbImage to_rgb(const Image& img) {
  RgbImage out{img.width(), img.height(), {}};
  out.pixels.reserve(img.pixels().size());
  for (Pixel v : img.pixels()) {
    const std::uint8_t g = saturate(v);
    out.pixels.push_back({g, g, g});
  }
  return out;
}

void draw_segment(RgbImage& img, Vertex from, Vertex to, Rgb color) {
  int x = from.x;
  int y = from.y;
  const int dx = std::abs(to.x - from.x);
  const int dy = -std::abs(to.y - from.y);
  const int sx = from.x < to.x ? 1 : -1;
  const int sy = from.y < to.y ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    if (x >= 0 && y >= 0 && x < img.width && y < img.height) img.at(x, y) = color;
    if (x == to.x && y == to.y) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

void draw_polyline(RgbImage& img, const ScoredPolyline& polyline, Rgb color) {
  for (std::size_t i = 0; i + 1 < polyline.vertices.size(); ++i) {
    draw_segment(img, polyline.vertices[i], polyline.vertices[i + 1], color);
  }
}

}  // namespace curvedet

#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvedet/image.hpp"
#include "curvedet/polyline_dp.hpp"

namespace curvedet {

struct SynthParams {
  int width = 64;
  int height = 64;
  int bands = 4;
  double gamma_max = 20.0;
  double noise_salt = 0.0;
  std::uint64_t seed = 0;
};

struct SynthTruth {
  std::vector<Vertex> vertices;
  int band_height = 0;
  double gamma_max = 0.0;
  double noise_salt = 0.0;
  std::uint64_t seed = 0;
};

struct SynthInstance {
  Image image;
  SynthTruth truth;
};

inline constexpr Pixel kStrokeValue = 255;

// Draws a random k-link polyline whose consecutive shifts respect the bend
// window, then salts each pixel to 255 with probability noise_salt.
// Throws InvalidParameter when no in-raster polyline can be drawn.
SynthInstance generate_synthetic(const SynthParams& params);

nlohmann::json to_json(const SynthTruth& truth);
SynthTruth synth_truth_from_json(const nlohmann::json& j);

}  // namespace curvedet

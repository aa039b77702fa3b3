#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "curvedet/image.hpp"
#include "curvedet/polyline_dp.hpp"
#include "curvedet/rmq.hpp"

namespace curvedet {

enum class Orientation { Vertical, Horizontal, Both };

std::string_view to_string(Orientation orientation);
Orientation parse_orientation(std::string_view name);

struct DetectParams {
  int bands = 4;
  double gamma_max = 10.0;
  double sigma = 2.0;
  int count = 1;
  // Defaults to half the band height of the oriented image.
  std::optional<int> min_separation;
  Orientation orientation = Orientation::Vertical;
  RmqBackend rmq_backend = RmqBackend::Sparse;
  int threads = 1;
};

// Throws InvalidParameter on any out-of-range field.
void validate(const DetectParams& params);

// Greedy suppression: take the best remaining candidate (stable order among
// equal scores), drop every candidate with a vertex on a shared boundary
// closer than min_separation to a selected vertex, repeat.
std::vector<ScoredPolyline> nms_select(std::vector<ScoredPolyline> candidates, int count,
                                       int min_separation);

// Smoothing, band split, FHT stack and constrained sweep over one orientation.
struct PreparedImage {
  BandStack bands;
  HoughStack stack;
};

PreparedImage prepare(const Image& img, const DetectParams& params);

// Extreme polylines starting on the top border, best first. Horizontal runs
// work on the transposed image and report vertices in image coordinates.
std::vector<ScoredPolyline> detect_curves(const Image& img, const DetectParams& params);

// Extreme polyline through a point on a band boundary of the smoothed image.
// `point` is in image coordinates; its y must be a multiple of the band height.
ScoredPolyline detect_through(const Image& img, const DetectParams& params, Vertex point);

}  // namespace curvedet

#include "curvedet/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "curvedet/error.hpp"
#include "curvedet/hough.hpp"
#include "curvedet/raster.hpp"

namespace curvedet {

namespace {

std::vector<ScoredPolyline> detect_vertical(const Image& img, const DetectParams& params) {
  const PreparedImage prepared = prepare(img, params);
  const SweepResult sweep =
      dp_sweep(prepared.stack, params.gamma_max, params.rmq_backend, params.threads);

  std::vector<ScoredPolyline> candidates;
  for (int x0 = 0; x0 < img.width(); ++x0) {
    if (const auto cell = best_in_column(sweep, x0)) candidates.push_back(reconstruct(sweep, *cell));
  }
  const int min_separation = params.min_separation.value_or(prepared.bands.band_height / 2);
  return nms_select(std::move(candidates), params.count, min_separation);
}

void swap_axes(std::vector<ScoredPolyline>& polylines) {
  for (auto& p : polylines) {
    for (auto& v : p.vertices) std::swap(v.x, v.y);
  }
}

bool by_score(const ScoredPolyline& a, const ScoredPolyline& b) { return a.score > b.score; }

}  // namespace

std::string_view to_string(Orientation orientation) {
  switch (orientation) {
    case Orientation::Vertical: return "vertical";
    case Orientation::Horizontal: return "horizontal";
    case Orientation::Both: return "both";
  }
  return "vertical";
}

Orientation parse_orientation(std::string_view name) {
  if (name == "vertical") return Orientation::Vertical;
  if (name == "horizontal") return Orientation::Horizontal;
  if (name == "both") return Orientation::Both;
  throw InvalidParameter("unknown orientation '" + std::string(name) + "'");
}

void validate(const DetectParams& params) {
  if (params.bands < 1) throw InvalidParameter("bands must be >= 1");
  if (!(params.gamma_max >= 0.0 && params.gamma_max <= 90.0)) {
    throw InvalidParameter("gamma_max must lie in [0, 90] degrees");
  }
  if (!(params.sigma >= 0.0)) throw InvalidParameter("sigma must be >= 0");
  if (params.count < 1) throw InvalidParameter("count must be >= 1");
  if (params.min_separation && *params.min_separation < 0) {
    throw InvalidParameter("min_separation must be >= 0");
  }
  if (params.threads < 1) throw InvalidParameter("threads must be >= 1");
}

std::vector<ScoredPolyline> nms_select(std::vector<ScoredPolyline> candidates, int count,
                                       int min_separation) {
  if (min_separation < 0) throw InvalidParameter("min_separation must be >= 0");
  std::stable_sort(candidates.begin(), candidates.end(), by_score);
  std::vector<ScoredPolyline> selected;
  for (auto& candidate : candidates) {
    if (static_cast<int>(selected.size()) >= count) break;
    const bool suppressed = std::any_of(selected.begin(), selected.end(), [&](const ScoredPolyline& kept) {
      for (const Vertex& a : candidate.vertices) {
        for (const Vertex& b : kept.vertices) {
          if (a.y == b.y && std::abs(a.x - b.x) < min_separation) return true;
        }
      }
      return false;
    });
    if (!suppressed) selected.push_back(std::move(candidate));
  }
  return selected;
}

PreparedImage prepare(const Image& img, const DetectParams& params) {
  validate(params);
  if (img.empty()) throw InvalidParameter("image is empty");
  PreparedImage out;
  out.bands = split_into_bands(gaussian_rows(img, params.sigma, params.threads), params.bands);
  out.stack = fht_stack(out.bands, params.threads);
  return out;
}

std::vector<ScoredPolyline> detect_curves(const Image& img, const DetectParams& params) {
  validate(params);
  if (img.empty()) throw InvalidParameter("image is empty");
  switch (params.orientation) {
    case Orientation::Vertical:
      return detect_vertical(img, params);
    case Orientation::Horizontal: {
      auto found = detect_vertical(transpose(img), params);
      swap_axes(found);
      return found;
    }
    case Orientation::Both: {
      auto merged = detect_vertical(img, params);
      auto horizontal = detect_vertical(transpose(img), params);
      swap_axes(horizontal);
      merged.insert(merged.end(), std::make_move_iterator(horizontal.begin()),
                    std::make_move_iterator(horizontal.end()));
      std::stable_sort(merged.begin(), merged.end(), by_score);
      if (static_cast<int>(merged.size()) > params.count) merged.resize(static_cast<std::size_t>(params.count));
      return merged;
    }
  }
  return {};
}

ScoredPolyline detect_through(const Image& img, const DetectParams& params, Vertex point) {
  if (params.orientation != Orientation::Vertical) {
    throw InvalidParameter("through-point detection supports vertical orientation only");
  }
  const PreparedImage prepared = prepare(img, params);
  const int s = prepared.bands.band_height;
  if (point.x < 0 || point.x >= img.width()) throw InvalidParameter("point x outside the image");
  if (point.y < 0 || point.y % s != 0 || point.y / s > params.bands) {
    throw InvalidParameter("point y=" + std::to_string(point.y) + " is not a band boundary (band height " +
                           std::to_string(s) + ")");
  }
  ThroughOptions options;
  options.backend = params.rmq_backend;
  options.threads = params.threads;
  return detect_through_point(prepared.stack, {point.x, point.y / s}, params.gamma_max, options);
}

}  // namespace curvedet

#pragma once

#include <optional>

#include "curvedet/hough.hpp"
#include "curvedet/image.hpp"
#include "curvedet/polyline_dp.hpp"

namespace curvedet::oracle {

// Direct summation over dyadic_pattern for every cell, O(W s^2).
HoughImage naive_dyadic_hough(const Image& band);

struct EnumerationGuard {
  int max_width = 16;
  int max_bands = 4;
};

struct ThroughConstraint {
  int x = 0;
  int boundary = 0;
  // Apply the bend window to the two links meeting at the point.
  bool enforce_join = true;
};

// Enumerates every vertex tuple with |x_{i+1} - x_i| <= s inside [0, W) and
// returns the best by raw Hough sum, subject to the discrete bend window
// between consecutive links. Ties go to the smallest x_0, then the
// lexicographically smallest shift sequence. Returns nullopt when nothing is
// feasible; throws OracleGuardExceeded above the guard.
std::optional<ScoredPolyline> exhaustive_best_polyline(
    const HoughStack& stack, BendLimit gamma_max, std::optional<int> start_column = std::nullopt,
    std::optional<ThroughConstraint> through = std::nullopt, EnumerationGuard guard = {});

// Best straight dyadic chain: one shift repeated over every band.
std::optional<ScoredPolyline> best_constant_shift_chain(const HoughStack& stack);

// One pixel per row along the midpoint-rasterized segment from
// (x_top, y_top) to (x_bottom, y_bottom), rows [y_top, y_bottom). Pixels
// outside the image count 0.
Pixel ideal_line_sum(const Image& img, int x_top, int x_bottom, int y_top, int y_bottom);

}  // namespace curvedet::oracle

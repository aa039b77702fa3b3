#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "curvedet/hough.hpp"
#include "curvedet/rmq.hpp"

namespace curvedet {

// Maximum bending angle in degrees between adjacent links; nullopt lifts
// the constraint so every continuation in the column is admissible.
using BendLimit = std::optional<double>;
inline constexpr BendLimit kUnbounded = std::nullopt;

// Score of a cell that cannot start a complete polyline.
inline constexpr Pixel kInvalidScore = std::numeric_limits<Pixel>::min();

// Inclusive range of continuation shifts in the next band.
struct AngleWindow {
  int lo = 0;
  int hi = 0;
  bool contains(int shift) const { return lo <= shift && shift <= hi; }
  bool operator==(const AngleWindow&) const = default;
};

// Shifts of the next link whose inclination differs from that of a link with
// `shift_upper` by at most gamma_max degrees, rounded to the nearest shift
// and always including shift_upper itself.
AngleWindow angle_window(int shift_upper, int band_height, double gamma_max);

// windows[shift] for every shift in [0, 2s].
using WindowTable = std::vector<AngleWindow>;

WindowTable make_window_table(int band_height, BendLimit gamma_max);

// Window table for sweeping a vertically flipped stack: for a flipped cell
// with shift f, the admissible flipped continuations g are those for which
// the original pair satisfies (2s - f) in angle_window(2s - g).
WindowTable make_reverse_window_table(int band_height, BendLimit gamma_max);

// Winning continuation shift per cell (band i -> band i + 1).
class PredecessorTable {
 public:
  static constexpr std::int32_t kNone = -1;

  PredecessorTable() = default;
  PredecessorTable(int links, int width, int band_height);

  int links() const { return links_; }
  int width() const { return width_; }
  int band_height() const { return band_height_; }

  std::int32_t at(int band, int x, int shift) const { return entries_[index(band, x, shift)]; }
  std::int32_t& at(int band, int x, int shift) { return entries_[index(band, x, shift)]; }

  bool operator==(const PredecessorTable&) const = default;

 private:
  std::size_t index(int band, int x, int shift) const {
    const auto shifts = static_cast<std::size_t>(2 * band_height_ + 1);
    return (static_cast<std::size_t>(band) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * shifts + static_cast<std::size_t>(shift);
  }

  int links_ = 0;
  int width_ = 0;
  int band_height_ = 0;
  std::vector<std::int32_t> entries_;
};

struct SweepResult {
  // Best complete-polyline score for each first link, kInvalidScore where
  // no polyline with exactly k in-raster vertices starts there.
  HoughImage augmented;
  PredecessorTable predecessors;
  int bands = 0;
  BendLimit gamma_max;
};

SweepResult dp_sweep(const HoughStack& stack, BendLimit gamma_max,
                     RmqBackend backend = RmqBackend::Sparse, int threads = 1);

// Sweep with an explicit per-shift window table (shared by every band step).
SweepResult sweep_with_windows(const HoughStack& stack, const WindowTable& windows,
                               BendLimit gamma_max, RmqBackend backend, int threads = 1);

struct Vertex {
  int x = 0;
  int y = 0;
  bool operator==(const Vertex&) const = default;
  auto operator<=>(const Vertex&) const = default;
};

struct ScoredPolyline {
  std::vector<Vertex> vertices;
  Pixel score = 0;
  bool constrained = false;
  double gamma_max = 90.0;

  bool operator==(const ScoredPolyline&) const = default;
};

// Shift of every link of a mostly vertical polyline with the given band height.
std::vector<int> link_shifts(const ScoredPolyline& polyline, int band_height);

// Sum of raw Hough cells the polyline traverses; throws InvalidParameter if a
// link is not a mostly vertical segment in the stack.
Pixel rescore(const HoughStack& stack, const ScoredPolyline& polyline);

struct StartCell {
  int x = 0;
  int shift = 0;
  bool operator==(const StartCell&) const = default;
};

// Follows predecessors from a first link. Throws NoPolyline when the start
// cell has no complete chain.
ScoredPolyline reconstruct(const SweepResult& sweep, StartCell start);

// Best valid first link in column x (smallest shift on ties).
std::optional<StartCell> best_in_column(const SweepResult& sweep, int x);

// Best valid first link over columns [x_begin, x_end), ties broken by
// smallest x then smallest shift.
std::optional<StartCell> best_start(const SweepResult& sweep, int x_begin, int x_end);

// Reverses band order and re-indexes every cell to the vertically mirrored
// segment: flipped cell (x, f) holds original cell (x + s - f, 2s - f), or 0
// where that origin lies outside the raster. Polyline scores on the flipped
// stack equal sums of the original cells.
HoughStack flip_stack(const HoughStack& stack);

struct ThroughPoint {
  int x = 0;
  int boundary = 0;  // band boundary index j in [0, k]
};

struct ThroughOptions {
  RmqBackend backend = RmqBackend::Sparse;
  // Require the two links meeting at the point to satisfy the bend window.
  bool enforce_join = true;
  int threads = 1;
};

// Extreme polyline through (x, j * s): the lower part by sweeping bands
// j..k-1, the upper part by sweeping the flipped bands 0..j-1.
ScoredPolyline detect_through_point(const HoughStack& stack, ThroughPoint point,
                                    BendLimit gamma_max, const ThroughOptions& options = {});

}  // namespace curvedet

#include "curvedet/polyline_dp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "curvedet/error.hpp"
#include "curvedet/parallel.hpp"

namespace curvedet {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

int window_bound(int s, double angle) {
  const double shift = s + s * std::tan(angle);
  return std::clamp(static_cast<int>(std::lround(shift)), 0, 2 * s);
}

void check_gamma(double gamma_max) {
  if (!(gamma_max >= 0.0 && gamma_max <= 90.0)) {
    throw InvalidParameter("gamma_max must lie in [0, 90] degrees");
  }
}

HoughStack slice(const HoughStack& stack, int first, int count) {
  HoughStack out;
  out.width = stack.width;
  out.band_height = stack.band_height;
  out.images.assign(stack.images.begin() + first, stack.images.begin() + first + count);
  return out;
}

}  // namespace

AngleWindow angle_window(int shift_upper, int band_height, double gamma_max) {
  check_gamma(gamma_max);
  const int s = band_height;
  if (shift_upper < 0 || shift_upper > 2 * s) {
    throw InvalidParameter("shift " + std::to_string(shift_upper) + " outside [0, 2s]");
  }
  const double alpha = std::atan(static_cast<double>(shift_upper - s) / s);
  const double gamma = gamma_max * std::numbers::pi / 180.0;
  AngleWindow window{window_bound(s, std::max(-kQuarterPi, alpha - gamma)),
                     window_bound(s, std::min(kQuarterPi, alpha + gamma))};
  window.lo = std::min(window.lo, shift_upper);
  window.hi = std::max(window.hi, shift_upper);
  return window;
}

WindowTable make_window_table(int band_height, BendLimit gamma_max) {
  const int shifts = 2 * band_height + 1;
  if (!gamma_max) return WindowTable(static_cast<std::size_t>(shifts), AngleWindow{0, 2 * band_height});
  WindowTable table(static_cast<std::size_t>(shifts));
  for (int sh = 0; sh < shifts; ++sh) {
    table[static_cast<std::size_t>(sh)] = angle_window(sh, band_height, *gamma_max);
  }
  return table;
}

WindowTable make_reverse_window_table(int band_height, BendLimit gamma_max) {
  const int top = 2 * band_height;
  const WindowTable forward = make_window_table(band_height, gamma_max);
  WindowTable table(forward.size());
  for (int f = 0; f <= top; ++f) {
    int lo = top + 1;
    int hi = -1;
    for (int g = 0; g <= top; ++g) {
      if (forward[static_cast<std::size_t>(top - g)].contains(top - f)) {
        lo = std::min(lo, g);
        hi = std::max(hi, g);
      }
    }
    // Window bounds are monotone in the shift, so the admissible set is an
    // interval and contains f itself.
    if (lo > f || hi < f) throw std::logic_error("reverse window excludes its own shift");
    table[static_cast<std::size_t>(f)] = {lo, hi};
  }
  return table;
}

PredecessorTable::PredecessorTable(int links, int width, int band_height)
    : links_(links), width_(width), band_height_(band_height) {
  entries_.assign(static_cast<std::size_t>(links) * static_cast<std::size_t>(width) *
                      static_cast<std::size_t>(2 * band_height + 1),
                  kNone);
}

SweepResult dp_sweep(const HoughStack& stack, BendLimit gamma_max, RmqBackend backend, int threads) {
  if (gamma_max) check_gamma(*gamma_max);
  if (stack.images.empty()) throw InvalidParameter("cannot sweep an empty Hough stack");
  return sweep_with_windows(stack, make_window_table(stack.band_height, gamma_max), gamma_max,
                            backend, threads);
}

SweepResult sweep_with_windows(const HoughStack& stack, const WindowTable& windows,
                               BendLimit gamma_max, RmqBackend backend, int threads) {
  const int k = stack.size();
  if (k == 0) throw InvalidParameter("cannot sweep an empty Hough stack");
  const int width = stack.width;
  const int s = stack.band_height;
  const int shifts = 2 * s + 1;
  if (static_cast<int>(windows.size()) != shifts) throw InvalidParameter("window table size mismatch");

  SweepResult result;
  result.bands = k;
  result.gamma_max = gamma_max;
  result.predecessors = PredecessorTable(k - 1, width, s);

  // The bottom link must end inside the raster too.
  HoughImage current = stack.images.back();
  for (int x = 0; x < width; ++x) {
    auto col = current.column(x);
    for (int sh = 0; sh < shifts; ++sh) {
      const int x_bottom = s - sh + x;
      if (x_bottom < 0 || x_bottom >= width) col[static_cast<std::size_t>(sh)] = kInvalidScore;
    }
  }

  for (int i = k - 1; i >= 1; --i) {
    const HoughImage& raw = stack.images[static_cast<std::size_t>(i - 1)];
    HoughImage next(width, s);
    next.fill(kInvalidScore);

    // Each cell (x0, sh) of band i - 1 continues from column
    // x_b = s - sh + x0 of band i; iterating over x_b visits every cell once.
    parallel_for(0, width, threads, [&](int xb_begin, int xb_end) {
      RmqIndex rmq;
      bool built = false;
      for (int x_b = xb_begin; x_b < xb_end; ++x_b) {
        const auto column = current.column(x_b);
        if (std::all_of(column.begin(), column.end(), [](Pixel v) { return v == kInvalidScore; })) {
          continue;
        }
        if (!built) {
          rmq = RmqIndex(column, backend);
          built = true;
        } else {
          rmq.assign(column);
        }
        for (int sh = 0; sh < shifts; ++sh) {
          const int x0 = x_b - s + sh;
          if (x0 < 0 || x0 >= width) continue;
          const AngleWindow w = windows[static_cast<std::size_t>(sh)];
          const RangeMax best = rmq.query(w.lo, w.hi);
          if (best.value == kInvalidScore) continue;
          next.at(x0, sh) = raw.at(x0, sh) + best.value;
          result.predecessors.at(i - 1, x0, sh) = best.index;
        }
      }
    });
    current = std::move(next);
  }
  result.augmented = std::move(current);
  return result;
}

std::vector<int> link_shifts(const ScoredPolyline& polyline, int band_height) {
  std::vector<int> shifts;
  for (std::size_t i = 0; i + 1 < polyline.vertices.size(); ++i) {
    shifts.push_back(band_height - (polyline.vertices[i + 1].x - polyline.vertices[i].x));
  }
  return shifts;
}

Pixel rescore(const HoughStack& stack, const ScoredPolyline& polyline) {
  if (static_cast<int>(polyline.vertices.size()) != stack.size() + 1) {
    throw InvalidParameter("polyline needs one vertex per band boundary");
  }
  const int s = stack.band_height;
  const std::vector<int> shifts = link_shifts(polyline, s);
  Pixel total = 0;
  for (int i = 0; i < stack.size(); ++i) {
    const int x = polyline.vertices[static_cast<std::size_t>(i)].x;
    const int sh = shifts[static_cast<std::size_t>(i)];
    if (x < 0 || x >= stack.width || sh < 0 || sh > 2 * s) {
      throw InvalidParameter("link " + std::to_string(i) + " is not a mostly vertical segment");
    }
    total += stack.images[static_cast<std::size_t>(i)].at(x, sh);
  }
  return total;
}

ScoredPolyline reconstruct(const SweepResult& sweep, StartCell start) {
  const HoughImage& scores = sweep.augmented;
  const int s = scores.band_height();
  if (start.x < 0 || start.x >= scores.width() || start.shift < 0 || start.shift > 2 * s ||
      scores.at(start.x, start.shift) == kInvalidScore) {
    throw NoPolyline("no complete polyline starts at (" + std::to_string(start.x) + ", " +
                     std::to_string(start.shift) + ")");
  }
  ScoredPolyline out;
  out.score = scores.at(start.x, start.shift);
  out.constrained = sweep.gamma_max.has_value();
  out.gamma_max = sweep.gamma_max.value_or(90.0);
  out.vertices.reserve(static_cast<std::size_t>(sweep.bands + 1));
  out.vertices.push_back({start.x, 0});
  int x = start.x;
  int sh = start.shift;
  for (int i = 0; i < sweep.bands; ++i) {
    const int x_next = s - sh + x;
    out.vertices.push_back({x_next, (i + 1) * s});
    if (i + 1 < sweep.bands) {
      sh = sweep.predecessors.at(i, x, sh);
      if (sh == PredecessorTable::kNone) throw std::logic_error("broken predecessor chain");
      x = x_next;
    }
  }
  return out;
}

std::optional<StartCell> best_in_column(const SweepResult& sweep, int x) {
  const auto column = sweep.augmented.column(x);
  std::optional<StartCell> best;
  Pixel best_score = kInvalidScore;
  for (int sh = 0; sh < static_cast<int>(column.size()); ++sh) {
    if (column[static_cast<std::size_t>(sh)] > best_score) {
      best_score = column[static_cast<std::size_t>(sh)];
      best = StartCell{x, sh};
    }
  }
  return best;
}

std::optional<StartCell> best_start(const SweepResult& sweep, int x_begin, int x_end) {
  std::optional<StartCell> best;
  Pixel best_score = kInvalidScore;
  for (int x = std::max(0, x_begin); x < std::min(x_end, sweep.augmented.width()); ++x) {
    const auto cell = best_in_column(sweep, x);
    if (cell && sweep.augmented.at(cell->x, cell->shift) > best_score) {
      best_score = sweep.augmented.at(cell->x, cell->shift);
      best = cell;
    }
  }
  return best;
}

HoughStack flip_stack(const HoughStack& stack) {
  const int width = stack.width;
  const int s = stack.band_height;
  HoughStack out;
  out.width = width;
  out.band_height = s;
  out.images.reserve(stack.images.size());
  for (auto it = stack.images.rbegin(); it != stack.images.rend(); ++it) {
    HoughImage flipped(width, s);
    for (int x = 0; x < width; ++x) {
      for (int f = 0; f <= 2 * s; ++f) {
        const int origin = x + s - f;
        if (origin >= 0 && origin < width) flipped.at(x, f) = it->at(origin, 2 * s - f);
      }
    }
    out.images.push_back(std::move(flipped));
  }
  return out;
}

ScoredPolyline detect_through_point(const HoughStack& stack, ThroughPoint point,
                                    BendLimit gamma_max, const ThroughOptions& options) {
  if (gamma_max) check_gamma(*gamma_max);
  const int k = stack.size();
  const int s = stack.band_height;
  if (k == 0) throw InvalidParameter("cannot sweep an empty Hough stack");
  if (point.boundary < 0 || point.boundary > k) {
    throw InvalidParameter("point must lie on a band boundary in [0, k]");
  }
  if (point.x < 0 || point.x >= stack.width) throw InvalidParameter("point column outside the raster");
  const int j = point.boundary;

  std::optional<SweepResult> lower;
  std::optional<SweepResult> upper;
  if (j < k) {
    lower = sweep_with_windows(slice(stack, j, k - j), make_window_table(s, gamma_max), gamma_max,
                               options.backend, options.threads);
  }
  if (j > 0) {
    upper = sweep_with_windows(flip_stack(slice(stack, 0, j)), make_reverse_window_table(s, gamma_max),
                               gamma_max, options.backend, options.threads);
  }

  // Flipped shift f corresponds to original shift 2s - f of the link above P.
  int best_lower = -1;
  int best_upper = -1;
  Pixel best_score = kInvalidScore;
  if (!upper) {
    if (auto cell = best_in_column(*lower, point.x)) {
      best_lower = cell->shift;
      best_score = lower->augmented.at(point.x, best_lower);
    }
  } else if (!lower) {
    if (auto cell = best_in_column(*upper, point.x)) {
      best_upper = cell->shift;
      best_score = upper->augmented.at(point.x, best_upper);
    }
  } else {
    const WindowTable join = make_window_table(s, options.enforce_join ? gamma_max : kUnbounded);
    for (int up = 0; up <= 2 * s; ++up) {
      const int f = 2 * s - up;
      const Pixel u = upper->augmented.at(point.x, f);
      if (u == kInvalidScore) continue;
      const AngleWindow w = join[static_cast<std::size_t>(up)];
      for (int sh = w.lo; sh <= w.hi; ++sh) {
        const Pixel l = lower->augmented.at(point.x, sh);
        if (l == kInvalidScore) continue;
        if (u + l > best_score) {
          best_score = u + l;
          best_upper = f;
          best_lower = sh;
        }
      }
    }
  }
  if (best_score == kInvalidScore) {
    throw NoPolyline("no complete polyline passes through (" + std::to_string(point.x) + ", " +
                     std::to_string(j * s) + ")");
  }

  ScoredPolyline out;
  out.score = best_score;
  out.constrained = gamma_max.has_value();
  out.gamma_max = gamma_max.value_or(90.0);
  if (upper) {
    const ScoredPolyline part = reconstruct(*upper, {point.x, best_upper});
    for (int n = j; n >= 0; --n) {
      out.vertices.push_back({part.vertices[static_cast<std::size_t>(n)].x, (j - n) * s});
    }
  }
  if (lower) {
    const ScoredPolyline part = reconstruct(*lower, {point.x, best_lower});
    for (std::size_t n = upper ? 1 : 0; n < part.vertices.size(); ++n) {
      out.vertices.push_back({part.vertices[n].x, part.vertices[n].y + j * s});
    }
  }
  return out;
}

}  // namespace curvedet

#include "curvedet/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>
#include <vector>

#include "curvedet/error.hpp"

namespace curvedet::oracle {

namespace {

Pixel sample(const Image& band, int x, int y) {
  if (x < 0 || x >= band.width()) return 0;
  return band.at(x, y);
}

Pixel floor_div(Pixel num, Pixel den) {
  Pixel q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

struct Search {
  Search(const HoughStack& stack, BendLimit gamma_max, std::optional<ThroughConstraint> through)
      : stack(stack), gamma_max(gamma_max), through(through), s(stack.band_height), k(stack.size()) {
    xs.assign(static_cast<std::size_t>(k + 1), 0);
    shifts.assign(static_cast<std::size_t>(k), 0);
  }

  const HoughStack& stack;
  BendLimit gamma_max;
  std::optional<ThroughConstraint> through;
  int s = 0;
  int k = 0;

  std::vector<int> xs;
  std::vector<int> shifts;
  bool found = false;
  Pixel best_score = 0;
  std::vector<int> best_xs;
  std::vector<int> best_shifts;

  bool pins(int boundary, int x) const {
    return !through || through->boundary != boundary || through->x == x;
  }

  void consider() {
    Pixel score = 0;
    for (int i = 0; i < k; ++i) score += stack.images[static_cast<std::size_t>(i)].at(xs[i], shifts[i]);
    const bool better =
        !found || score > best_score ||
        (score == best_score && std::tie(xs[0], shifts) < std::tie(best_xs[0], best_shifts));
    if (better) {
      found = true;
      best_score = score;
      best_xs = xs;
      best_shifts = shifts;
    }
  }

  // Chooses vertex `boundary` given vertices [0, boundary).
  void extend(int boundary) {
    if (boundary > k) {
      consider();
      return;
    }
    const int prev = xs[static_cast<std::size_t>(boundary - 1)];
    for (int x = std::max(0, prev - s); x <= std::min(stack.width - 1, prev + s); ++x) {
      if (!pins(boundary, x)) continue;
      const int link = boundary - 1;
      const int sh = s - (x - prev);
      if (link > 0 && gamma_max) {
        const bool exempt = through && !through->enforce_join && through->boundary == link;
        if (!exempt && !angle_window(shifts[static_cast<std::size_t>(link - 1)], s, *gamma_max).contains(sh)) {
          continue;
        }
      }
      xs[static_cast<std::size_t>(boundary)] = x;
      shifts[static_cast<std::size_t>(link)] = sh;
      extend(boundary + 1);
    }
  }
};

}  // namespace

HoughImage naive_dyadic_hough(const Image& band) {
  const int s = band.height();
  if (s < 1 || !std::has_single_bit(static_cast<unsigned>(s))) {
    throw InvalidParameter("band height " + std::to_string(s) + " is not a power of two");
  }
  const int width = band.width();
  HoughImage out(width, s);
  for (int x = 0; x < width; ++x) {
    for (int shift = 0; shift <= 2 * s; ++shift) {
      Pixel total = 0;
      if (shift <= s) {
        for (const PatternPixel& p : dyadic_pattern(x, s - shift, s)) total += sample(band, p.x, p.y);
      } else {
        // Pattern of the horizontally mirrored band, mapped back.
        for (const PatternPixel& p : dyadic_pattern(width - 1 - x, shift - s, s)) {
          total += sample(band, width - 1 - p.x, p.y);
        }
      }
      out.at(x, shift) = total;
    }
  }
  return out;
}

std::optional<ScoredPolyline> exhaustive_best_polyline(const HoughStack& stack, BendLimit gamma_max,
                                                       std::optional<int> start_column,
                                                       std::optional<ThroughConstraint> through,
                                                       EnumerationGuard guard) {
  if (stack.width > guard.max_width || stack.size() > guard.max_bands) {
    throw OracleGuardExceeded("exhaustive search limited to W <= " + std::to_string(guard.max_width) +
                              " and k <= " + std::to_string(guard.max_bands) + " (got W=" +
                              std::to_string(stack.width) + ", k=" + std::to_string(stack.size()) + ")");
  }
  if (stack.images.empty()) throw InvalidParameter("empty Hough stack");

  Search search(stack, gamma_max, through);
  for (int x0 = 0; x0 < stack.width; ++x0) {
    if (start_column && *start_column != x0) continue;
    if (!search.pins(0, x0)) continue;
    search.xs[0] = x0;
    search.extend(1);
  }
  if (!search.found) return std::nullopt;

  ScoredPolyline out;
  out.score = search.best_score;
  out.constrained = gamma_max.has_value();
  out.gamma_max = gamma_max.value_or(90.0);
  for (int i = 0; i <= search.k; ++i) {
    out.vertices.push_back({search.best_xs[static_cast<std::size_t>(i)], i * search.s});
  }
  return out;
}

std::optional<ScoredPolyline> best_constant_shift_chain(const HoughStack& stack) {
  const int s = stack.band_height;
  const int k = stack.size();
  std::optional<ScoredPolyline> best;
  for (int x0 = 0; x0 < stack.width; ++x0) {
    for (int sh = 0; sh <= 2 * s; ++sh) {
      const int step = s - sh;
      const int last = x0 + k * step;
      if (last < 0 || last >= stack.width) continue;
      Pixel score = 0;
      for (int i = 0; i < k; ++i) score += stack.images[static_cast<std::size_t>(i)].at(x0 + i * step, sh);
      if (!best || score > best->score) {
        ScoredPolyline p;
        p.score = score;
        p.constrained = true;
        p.gamma_max = 0.0;
        for (int i = 0; i <= k; ++i) p.vertices.push_back({x0 + i * step, i * s});
        best = std::move(p);
      }
    }
  }
  return best;
}

Pixel ideal_line_sum(const Image& img, int x_top, int x_bottom, int y_top, int y_bottom) {
  const Pixel dy = y_bottom - y_top;
  const Pixel dx = x_bottom - x_top;
  if (dy <= 0) throw InvalidParameter("segment must span at least one row downwards");
  if (std::abs(dx) > dy) throw InvalidParameter("segment is not mostly vertical");
  Pixel total = 0;
  for (Pixel t = 0; t < dy; ++t) {
    // Nearest column to the ideal line, halves rounded up.
    const Pixel x = x_top + floor_div(2 * dx * t + dy, 2 * dy);
    const Pixel y = y_top + t;
    if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) continue;
    total += img.at(static_cast<int>(x), static_cast<int>(y));
  }
  return total;
}

}  // namespace curvedet::oracle

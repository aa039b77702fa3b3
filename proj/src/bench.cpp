#include "curvedet/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>

#include "curvedet/hough.hpp"
#include "curvedet/pipeline.hpp"
#include "curvedet/polyline_dp.hpp"
#include "curvedet/raster.hpp"

namespace curvedet {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t median(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::int64_t elapsed_ns(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count();
}

Image random_image(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(0, 255);
  Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) img.at(x, y) = value(rng);
  }
  return img;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchGrid& grid) {
  DetectParams params;
  params.gamma_max = grid.gamma_max;
  params.rmq_backend = grid.backend;
  params.threads = grid.threads;
  const int repeats = std::max(1, grid.repeats);

  std::vector<BenchRow> rows;
  for (int h : grid.heights) {
    for (int w : grid.widths) {
      for (int k : grid.bands) {
        params.bands = k;
        validate(params);
        const Image img = random_image(w, h, grid.seed);
        std::vector<std::int64_t> precompute;
        std::vector<std::int64_t> sweep;
        for (int r = 0; r < repeats; ++r) {
          auto start = Clock::now();
          const PreparedImage prepared = prepare(img, params);
          precompute.push_back(elapsed_ns(start));

          start = Clock::now();
          [[maybe_unused]] const SweepResult result =
              dp_sweep(prepared.stack, params.gamma_max, params.rmq_backend, params.threads);
          sweep.push_back(elapsed_ns(start));
        }
        rows.push_back({w, h, k, "precompute", median(precompute)});
        rows.push_back({w, h, k, "sweep", median(sweep)});
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "w,h,k,phase,median_ns\n";
  for (const BenchRow& r : rows) {
    out << r.width << ',' << r.height << ',' << r.bands << ',' << r.phase << ',' << r.median_ns << '\n';
  }
}

}  // namespace curvedet

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "curvedet/rmq.hpp"

namespace curvedet {

struct BenchGrid {
  std::vector<int> widths{256};
  std::vector<int> heights{256, 512, 1024};
  std::vector<int> bands{8};
  int repeats = 5;
  double gamma_max = 10.0;
  RmqBackend backend = RmqBackend::Sparse;
  int threads = 1;
  std::uint64_t seed = 1;
};

struct BenchRow {
  int width = 0;
  int height = 0;
  int bands = 0;
  std::string phase;  // "precompute" or "sweep"
  std::int64_t median_ns = 0;
};

// Times precompute (smoothing + FHT) and the sweep separately on a seeded
// random image for every grid point; reports the median over repeats.
std::vector<BenchRow> run_bench(const BenchGrid& grid);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace curvedet

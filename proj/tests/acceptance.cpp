// Acceptance checks, one PASS/FAIL line per criterion. Exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "curvedet/bench.hpp"
#include "curvedet/json_io.hpp"
#include "curvedet/netpbm.hpp"
#include "curvedet/oracle.hpp"
#include "curvedet/pipeline.hpp"
#include "curvedet/polyline_dp.hpp"
#include "curvedet/rmq.hpp"
#include "curvedet/synth.hpp"
#include "test_support.hpp"

using namespace curvedet;
using curvedet::testing::random_image;
using curvedet::testing::random_stack;

namespace {

// Pinned tolerances.
constexpr int kFhtCases = 200;
constexpr int kDpCases = 150;
constexpr int kWindowSeeds = 50;
constexpr int kBackendSeeds = 50;
constexpr int kRecoveryInstances = 100;
constexpr int kNoiselessTolerancePx = 1;
constexpr double kNoiselessMinFraction = 0.95;
constexpr int kSaltTolerancePx = 2;
constexpr double kSaltMinFraction = 0.90;
constexpr double kSaltRate = 0.05;
constexpr double kMaxDoublingRatio = 2.6;
constexpr int kInvariantSeeds = 100;
constexpr int kDeterminismRuns = 3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::optional<ScoredPolyline> sweep_best(const HoughStack& stack, BendLimit gamma,
                                         RmqBackend backend = RmqBackend::Sparse) {
  const SweepResult sweep = dp_sweep(stack, gamma, backend);
  const auto start = best_start(sweep, 0, stack.width);
  if (!start) return std::nullopt;
  return reconstruct(sweep, *start);
}

Outcome fht_exactness() {
  const int widths[] = {8, 16, 32, 64};
  const int heights[] = {2, 4, 8, 16};
  int bad = 0;
  for (int c = 0; c < kFhtCases; ++c) {
    const int w = widths[c % 4];
    const int s = heights[(c / 4) % 4];
    const Image band = random_image(w, s, 1000 + static_cast<std::uint64_t>(c));
    if (!(fht_band(band) == oracle::naive_dyadic_hough(band))) ++bad;
  }
  return {bad == 0, std::to_string(kFhtCases - bad) + "/" + std::to_string(kFhtCases) + " bands exact"};
}

Outcome dp_exactness() {
  const double gammas[] = {0.0, 10.0, 30.0, 90.0};
  std::mt19937_64 rng(2024);
  int bad = 0;
  for (int c = 0; c < kDpCases; ++c) {
    const int w = std::uniform_int_distribution<int>(1, 12)(rng);
    const int s = rng() % 2 == 0 ? 2 : 4;
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const double gamma = gammas[c % 4];
    const HoughStack stack = random_stack(w, s, k, 5000 + static_cast<std::uint64_t>(c));
    const auto got = sweep_best(stack, gamma);
    const auto want = oracle::exhaustive_best_polyline(stack, gamma);
    const bool same = got.has_value() == want.has_value() &&
                      (!got || (got->score == want->score && got->vertices == want->vertices));
    if (!same) ++bad;
  }
  return {bad == 0, std::to_string(kDpCases - bad) + "/" + std::to_string(kDpCases) + " instances match"};
}

Outcome window_equivalences() {
  int bad_unbounded = 0;
  int bad_zero = 0;
  for (int seed = 0; seed < kWindowSeeds; ++seed) {
    const HoughStack stack = random_stack(32, 8, 4, 7000 + static_cast<std::uint64_t>(seed));
    const SweepResult a = dp_sweep(stack, 90.0);
    const SweepResult b = dp_sweep(stack, kUnbounded);
    if (!(a.augmented == b.augmented && a.predecessors == b.predecessors)) ++bad_unbounded;
    const auto got = sweep_best(stack, 0.0);
    const auto want = oracle::best_constant_shift_chain(stack);
    if (!got || !want || got->score != want->score || got->vertices != want->vertices) ++bad_zero;
  }
  return {bad_unbounded == 0 && bad_zero == 0,
          "90deg vs unbounded mismatches " + std::to_string(bad_unbounded) +
              ", 0deg vs constant-shift mismatches " + std::to_string(bad_zero)};
}

Outcome backend_equivalence() {
  int bad = 0;
  for (int seed = 0; seed < kBackendSeeds; ++seed) {
    const auto u = static_cast<std::uint64_t>(seed);
    const HoughStack stack = random_stack(24 + seed % 9, 8, 3 + seed % 3, 9000 + u);
    const double gamma = 5.0 * (seed % 10);
    const SweepResult a = dp_sweep(stack, gamma, RmqBackend::Sparse);
    const SweepResult b = dp_sweep(stack, gamma, RmqBackend::SegTree);
    bool same = a.augmented == b.augmented && a.predecessors == b.predecessors;

    const Image img = random_image(40, 48, 9500 + u);
    DetectParams p;
    p.bands = 3;
    p.count = 3;
    p.gamma_max = gamma;
    auto ja = detection_to_json(p, 40, 48, 16, detect_curves(img, p));
    p.rmq_backend = RmqBackend::SegTree;
    auto jb = detection_to_json(p, 40, 48, 16, detect_curves(img, p));
    ja["params"].erase("rmq");
    jb["params"].erase("rmq");
    same = same && ja.dump() == jb.dump();
    if (!same) ++bad;
  }
  return {bad == 0, std::to_string(kBackendSeeds - bad) + "/" + std::to_string(kBackendSeeds) + " seeds identical"};
}

std::string histogram(const std::map<int, int>& h) {
  std::ostringstream out;
  for (auto [err, n] : h) out << ' ' << err << "px:" << n;
  return out.str();
}

Outcome synthetic_recovery() {
  DetectParams p;
  p.bands = 4;
  p.gamma_max = 20;
  p.sigma = 1;
  auto worst_error = [&](double salt, std::uint64_t seed) {
    SynthParams sp;
    sp.width = 64;
    sp.height = 64;
    sp.bands = 4;
    sp.gamma_max = 20;
    sp.noise_salt = salt;
    sp.seed = seed;
    const SynthInstance inst = generate_synthetic(sp);
    const auto found = detect_curves(inst.image, p);
    if (found.empty() || found[0].vertices.size() != inst.truth.vertices.size()) return 1 << 20;
    int worst = 0;
    for (std::size_t i = 0; i < found[0].vertices.size(); ++i) {
      worst = std::max(worst, std::abs(found[0].vertices[i].x - inst.truth.vertices[i].x));
    }
    return worst;
  };
  std::map<int, int> clean_hist;
  std::map<int, int> salt_hist;
  int clean_ok = 0;
  int salt_ok = 0;
  for (int i = 0; i < kRecoveryInstances; ++i) {
    const int a = worst_error(0.0, static_cast<std::uint64_t>(i));
    const int b = worst_error(kSaltRate, static_cast<std::uint64_t>(i));
    ++clean_hist[a];
    ++salt_hist[b];
    clean_ok += a <= kNoiselessTolerancePx;
    salt_ok += b <= kSaltTolerancePx;
  }
  const double fa = static_cast<double>(clean_ok) / kRecoveryInstances;
  const double fb = static_cast<double>(salt_ok) / kRecoveryInstances;
  std::ostringstream detail;
  detail << "noiseless <=1px " << fa * 100 << "% (" << histogram(clean_hist) << " ), 5% salt <=2px "
         << fb * 100 << "% (" << histogram(salt_hist) << " )";
  return {fa >= kNoiselessMinFraction && fb >= kSaltMinFraction, detail.str()};
}

Outcome scaling() {
  BenchGrid grid;
  grid.widths = {256};
  grid.heights = {256, 512, 1024};
  grid.bands = {8};
  grid.repeats = 5;
  run_bench({{256}, {256}, {8}, 1});  // warm up
  const auto rows = run_bench(grid);
  std::vector<std::int64_t> sweep;
  for (const auto& r : rows) {
    if (r.phase == "sweep") sweep.push_back(r.median_ns);
  }
  if (sweep.size() != 3) return {false, "unexpected bench output"};
  const double r1 = static_cast<double>(sweep[1]) / static_cast<double>(sweep[0]);
  const double r2 = static_cast<double>(sweep[2]) / static_cast<double>(sweep[1]);
  std::ostringstream detail;
  detail << "sweep medians " << sweep[0] << "/" << sweep[1] << "/" << sweep[2] << " ns, ratios " << r1
         << ", " << r2 << " (limit " << kMaxDoublingRatio << ")";
  return {r1 <= kMaxDoublingRatio && r2 <= kMaxDoublingRatio, detail.str()};
}

Outcome invariants() {
  int failures = 0;
  std::vector<std::string> broken;
  auto check = [&](bool ok, const char* what) {
    if (!ok) {
      ++failures;
      broken.emplace_back(what);
    }
  };
  const double ladder[] = {0.0, 2.0, 5.0, 10.0, 20.0, 30.0, 45.0, 90.0};
  for (int seed = 0; seed < kInvariantSeeds; ++seed) {
    const auto u = static_cast<std::uint64_t>(seed);
    const int w = 6 + seed % 20;
    const int s = 1 << (seed % 4);
    const int k = 1 + seed % 4;
    const HoughStack stack = random_stack(w, s, k, 11000 + u);

    // Best score is monotone in the bend limit.
    Pixel prev = kInvalidScore;
    for (double g : ladder) {
      const auto best = sweep_best(stack, g);
      const Pixel score = best ? best->score : kInvalidScore;
      check(score >= prev, "monotone in gamma");
      prev = score;
    }

    // Positive integer scaling keeps the argmax and scales the score.
    const Pixel factor = 2 + seed % 5;
    Image img = random_image(w, s * k, 11000 + u);
    const auto base = sweep_best(stack, 10.0);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) img.at(x, y) *= factor;
    }
    const auto scaled = sweep_best(fht_stack(split_into_bands(img, k)), 10.0);
    check(base && scaled && scaled->vertices == base->vertices && scaled->score == factor * base->score,
          "scaling invariance");

    // Involutions.
    const Image raw = random_image(w, 3 + seed % 11, 12000 + u);
    check(flip_vertical(flip_vertical(raw)) == raw, "flip involution");
    check(transpose(transpose(raw)) == raw, "transpose involution");

    // RMQ tie-break against a linear scan.
    std::mt19937_64 rng(13000 + u);
    const int n = 1 + static_cast<int>(rng() % 64);
    std::vector<Pixel> values(static_cast<std::size_t>(n));
    for (auto& v : values) v = static_cast<Pixel>(rng() % 5);
    for (auto backend : {RmqBackend::Sparse, RmqBackend::SegTree}) {
      const RmqIndex index(values, backend);
      for (int l = 0; l < n; ++l) {
        for (int r = l; r < n; ++r) {
          const auto it = std::max_element(values.begin() + l, values.begin() + r + 1);
          const RangeMax got = index.query(l, r);
          check(got.value == *it && got.index == static_cast<int>(it - values.begin()), "rmq tie-break");
        }
      }
    }

    // Every valid augmented cell reconstructs to a polyline with that score,
    // equal to the restricted oracle where it is small enough to enumerate.
    const SweepResult sweep = dp_sweep(stack, 20.0);
    for (int x = 0; x < stack.width; ++x) {
      for (int sh = 0; sh <= 2 * s; ++sh) {
        const Pixel cell = sweep.augmented.at(x, sh);
        if (cell == kInvalidScore) continue;
        const ScoredPolyline poly = reconstruct(sweep, {x, sh});
        check(poly.score == cell && rescore(stack, poly) == cell, "score reconstruction");
      }
    }
    if (w <= 12 && k <= 3 && s <= 4) {
      const auto got = sweep_best(stack, 20.0);
      const auto want = oracle::exhaustive_best_polyline(stack, 20.0);
      check(got && want && got->score == want->score && got->vertices == want->vertices,
            "oracle equivalence");
    }
  }
  std::sort(broken.begin(), broken.end());
  broken.erase(std::unique(broken.begin(), broken.end()), broken.end());
  std::string detail = std::to_string(kInvariantSeeds) + " seeds, " + std::to_string(failures) + " violations";
  for (const auto& b : broken) detail += " [" + b + "]";
  return {failures == 0, detail};
}

Outcome determinism() {
  curvedet::testing::ScratchDir dir("curvedet_acceptance");
  SynthParams sp;
  sp.width = 160;
  sp.height = 128;
  sp.bands = 4;
  sp.noise_salt = 0.05;
  sp.seed = 77;
  const std::string img = dir.file("in.pgm");
  write_pgm(std::filesystem::path(img), generate_synthetic(sp).image);
  const std::string common = "detect --input " + img + " --bands 4 --count 3 --orientation both --json ";
  std::vector<std::string> outputs;
  for (int run = 0; run < kDeterminismRuns; ++run) {
    const std::string out = dir.file("run" + std::to_string(run) + ".json");
    if (curvedet::testing::run_cli(common + out + " --threads 1 >/dev/null 2>&1") != 0) {
      return {false, "detect run failed"};
    }
    outputs.push_back(curvedet::testing::slurp(out));
  }
  const std::string threaded = dir.file("threads8.json");
  if (curvedet::testing::run_cli(common + threaded + " --threads 8 >/dev/null 2>&1") != 0) {
    return {false, "threaded detect run failed"};
  }
  outputs.push_back(curvedet::testing::slurp(threaded));
  const bool same = std::all_of(outputs.begin(), outputs.end(),
                                [&](const std::string& o) { return o == outputs.front(); });
  return {same && !outputs.front().empty(),
          std::to_string(kDeterminismRuns) + " runs + --threads 8, " + (same ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"fht exactness", fht_exactness},
      {"dp exactness", dp_exactness},
      {"window equivalences", window_equivalences},
      {"backend equivalence", backend_equivalence},
      {"synthetic recovery", synthetic_recovery},
      {"sweep scaling", scaling},
      {"invariant suite", invariants},
      {"determinism", determinism},
  };
  int failed = 0;
  int number = 1;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " " << number << " " << name << ": " << outcome.detail
              << " (" << secs << " s)" << std::endl;
    failed += !outcome.pass;
    ++number;
  }
  return failed == 0 ? 0 : 1;
}

// curvedet: detect limited-curvature curves as extreme k-link polylines.
//
//   curvedet detect --input img.pgm --bands 4 --gamma-max 10 --json out.json
//   curvedet synth  --width 64 --height 64 --bands 4 --seed 7 --output a.pgm --truth a.json
//   curvedet verify --seed 3 --width 8 --height 8 --bands 2
//   curvedet bench  --heights 256,512,1024 --widths 256 --bands 8 --repeats 5

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "curvedet/bench.hpp"
#include "curvedet/error.hpp"
#include "curvedet/hough.hpp"
#include "curvedet/json_io.hpp"
#include "curvedet/netpbm.hpp"
#include "curvedet/oracle.hpp"
#include "curvedet/pipeline.hpp"
#include "curvedet/raster.hpp"
#include "curvedet/synth.hpp"

namespace {

using namespace curvedet;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEmpty = 2;
constexpr int kExitMismatch = 3;

struct DetectArgs {
  std::string input;
  std::string json;
  std::string overlay;
  std::string through;
  std::string orientation = "vertical";
  std::string rmq = "sparse";
  std::optional<int> min_separation;
  bool gradient = false;
  DetectParams params;
};

struct SynthArgs {
  SynthParams params;
  std::string output;
  std::string truth;
};

struct VerifyArgs {
  std::uint64_t seed = 1;
  int width = 8;
  int height = 8;
  int bands = 2;
  int instances = 1;
  std::optional<double> gamma_max;
  std::string input;
  std::string rmq = "sparse";
  std::string inject_fault = "none";
};

struct BenchArgs {
  BenchGrid grid;
  std::string rmq = "sparse";
  std::string csv;
};

Vertex parse_point(const std::string& text) {
  std::istringstream in(text);
  Vertex v;
  char comma = 0;
  if (!(in >> v.x >> comma >> v.y) || comma != ',' || !in.eof()) {
    throw InvalidParameter("--through-point expects X,Y");
  }
  return v;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NetpbmError("cannot write " + path);
  out << text;
}

int run_detect(DetectArgs& args) {
  DetectParams& params = args.params;
  params.orientation = parse_orientation(args.orientation);
  params.rmq_backend = parse_rmq_backend(args.rmq);
  params.min_separation = args.min_separation;
  validate(params);

  const Image input = read_pgm(std::filesystem::path(args.input));
  const Image img = args.gradient ? morphological_gradient(input) : input;
  const int oriented_height = params.orientation == Orientation::Horizontal ? img.width() : img.height();
  const int s = band_height_for(oriented_height, params.bands);

  std::vector<ScoredPolyline> polylines;
  nlohmann::json doc;
  if (!args.through.empty()) {
    const Vertex point = parse_point(args.through);
    try {
      polylines.push_back(detect_through(img, params, point));
    } catch (const NoPolyline&) {
    }
    doc = detection_to_json(params, img.width(), img.height(), s, polylines);
    doc["params"]["through_point"] = {point.x, point.y};
  } else {
    polylines = detect_curves(img, params);
    doc = detection_to_json(params, img.width(), img.height(), s, polylines);
  }
  write_text(args.json, doc.dump(2) + "\n");

  if (!args.overlay.empty()) {
    RgbImage overlay = to_rgb(input);
    for (const auto& p : polylines) draw_polyline(overlay, p, Rgb{255, 0, 0});
    write_ppm(std::filesystem::path(args.overlay), overlay);
  }
  return polylines.empty() ? kExitEmpty : kExitOk;
}

int run_synth(const SynthArgs& args) {
  const SynthInstance inst = generate_synthetic(args.params);
  write_pgm(std::filesystem::path(args.output), inst.image);
  nlohmann::json truth = to_json(inst.truth);
  truth["width"] = args.params.width;
  truth["height"] = args.params.height;
  truth["bands"] = args.params.bands;
  write_text(args.truth, truth.dump(2) + "\n");
  return kExitOk;
}

Image random_instance(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(0, 255);
  Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) img.at(x, y) = value(rng);
  }
  return img;
}

std::string describe(const ScoredPolyline& p) {
  std::ostringstream out;
  out << "score=" << p.score << " vertices=";
  for (const Vertex& v : p.vertices) out << '(' << v.x << ',' << v.y << ')';
  return out.str();
}

// Returns kExitOk, or kExitMismatch after printing the first disagreement.
int verify_instance(const Image& img, const VerifyArgs& args, std::uint64_t seed) {
  const RmqBackend backend = parse_rmq_backend(args.rmq);
  const BandStack bands = split_into_bands(img, args.bands);
  const oracle::EnumerationGuard guard;
  if (bands.extended_width > guard.max_width || bands.band_count > guard.max_bands) {
    throw OracleGuardExceeded("instance exceeds oracle guard: W=" + std::to_string(bands.extended_width) +
                              " (max " + std::to_string(guard.max_width) + "), k=" +
                              std::to_string(bands.band_count) + " (max " + std::to_string(guard.max_bands) + ")");
  }

  HoughStack stack = fht_stack(bands);
  if (args.inject_fault == "fht") stack.images[0].at(0, 0) += 1;
  for (int i = 0; i < stack.size(); ++i) {
    const HoughImage naive = oracle::naive_dyadic_hough(bands.bands[static_cast<std::size_t>(i)]);
    const HoughImage& fast = stack.images[static_cast<std::size_t>(i)];
    for (int x = 0; x < fast.width(); ++x) {
      for (int sh = 0; sh < fast.shift_count(); ++sh) {
        if (fast.at(x, sh) != naive.at(x, sh)) {
          std::cout << "MISMATCH fht seed=" << seed << " band=" << i << " x=" << x << " shift=" << sh
                    << " fht=" << fast.at(x, sh) << " naive=" << naive.at(x, sh) << "\n";
          return kExitMismatch;
        }
      }
    }
  }
  if (args.inject_fault == "fht") stack.images[0].at(0, 0) -= 1;

  std::vector<BendLimit> limits;
  if (args.gamma_max) {
    limits.push_back(*args.gamma_max);
  } else {
    limits = {0.0, 10.0, 30.0, 90.0, kUnbounded};
  }
  for (const BendLimit& limit : limits) {
    const SweepResult sweep = dp_sweep(stack, limit, backend);
    const auto start = best_start(sweep, 0, stack.width);
    std::optional<ScoredPolyline> fast;
    if (start) fast = reconstruct(sweep, *start);
    if (fast && args.inject_fault == "dp") fast->score += 1;
    const auto slow = oracle::exhaustive_best_polyline(stack, limit, std::nullopt, std::nullopt, guard);
    const bool same = fast.has_value() == slow.has_value() &&
                      (!fast || (fast->score == slow->score && fast->vertices == slow->vertices));
    if (!same) {
      std::cout << "MISMATCH dp seed=" << seed << " gamma="
                << (limit ? std::to_string(*limit) : std::string("unbounded"))
                << " sweep=" << (fast ? describe(*fast) : "none")
                << " exhaustive=" << (slow ? describe(*slow) : "none") << "\n";
      return kExitMismatch;
    }
  }
  return kExitOk;
}

int run_verify(const VerifyArgs& args) {
  if (!args.input.empty()) {
    const int code = verify_instance(read_pgm(std::filesystem::path(args.input)), args, 0);
    if (code == kExitOk) std::cout << "OK " << args.input << "\n";
    return code;
  }
  for (int n = 0; n < args.instances; ++n) {
    const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(n);
    const int code = verify_instance(random_instance(args.width, args.height, seed), args, seed);
    if (code != kExitOk) return code;
  }
  std::cout << "OK " << args.instances << " instance(s) from seed " << args.seed << "\n";
  return kExitOk;
}

int run_bench_command(BenchArgs& args) {
  args.grid.backend = parse_rmq_backend(args.rmq);
  std::ostringstream csv;
  write_csv(csv, run_bench(args.grid));
  write_text(args.csv, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect end-to-end curves of limited curvature as extreme k-link polylines"};
  app.require_subcommand(1);

  DetectArgs detect;
  auto* cmd_detect = app.add_subcommand("detect", "Detect extreme polylines in a P5 image");
  cmd_detect->add_option("--input", detect.input, "Input P5 image")->required();
  cmd_detect->add_option("--bands", detect.params.bands, "Number of bands k")->capture_default_str();
  cmd_detect->add_option("--gamma-max", detect.params.gamma_max, "Maximum bending angle, degrees")
      ->capture_default_str();
  cmd_detect->add_option("--count", detect.params.count, "Number of polylines")->capture_default_str();
  cmd_detect->add_option("--sigma", detect.params.sigma, "Row Gaussian sigma")->capture_default_str();
  cmd_detect->add_option("--min-separation", detect.min_separation,
                         "Minimum vertex separation between polylines (default s/2)");
  cmd_detect->add_option("--orientation", detect.orientation, "vertical|horizontal|both")
      ->capture_default_str();
  cmd_detect->add_option("--rmq", detect.rmq, "sparse|segtree")->capture_default_str();
  cmd_detect->add_option("--through-point", detect.through, "X,Y on a band boundary");
  cmd_detect->add_option("--threads", detect.params.threads, "Worker threads")->capture_default_str();
  cmd_detect->add_option("--json", detect.json, "Result JSON path (stdout if omitted)");
  cmd_detect->add_option("--overlay", detect.overlay, "Overlay P6 path");
  cmd_detect->add_flag("--gradient", detect.gradient, "Apply a 3x3 morphological gradient first");

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic image with ground truth");
  cmd_synth->add_option("--width", synth.params.width, "Image width")->required();
  cmd_synth->add_option("--height", synth.params.height, "Image height")->required();
  cmd_synth->add_option("--bands", synth.params.bands, "Number of bands k")->required();
  cmd_synth->add_option("--seed", synth.params.seed, "RNG seed")->required();
  cmd_synth->add_option("--gamma-max", synth.params.gamma_max, "Maximum bending angle, degrees")
      ->capture_default_str();
  cmd_synth->add_option("--noise-salt", synth.params.noise_salt, "Salt probability per pixel")
      ->capture_default_str();
  cmd_synth->add_option("--output", synth.output, "Output P5 image")->required();
  cmd_synth->add_option("--truth", synth.truth, "Ground-truth JSON path (stdout if omitted)");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "Check FHT and sweep against brute-force oracles");
  cmd_verify->add_option("--seed", verify.seed, "First RNG seed")->capture_default_str();
  cmd_verify->add_option("--instances", verify.instances, "Number of seeded instances")->capture_default_str();
  cmd_verify->add_option("--width", verify.width, "Random image width")->capture_default_str();
  cmd_verify->add_option("--height", verify.height, "Random image height")->capture_default_str();
  cmd_verify->add_option("--bands", verify.bands, "Number of bands k")->capture_default_str();
  cmd_verify->add_option("--gamma-max", verify.gamma_max, "Single bend limit (default: a fixed set)");
  cmd_verify->add_option("--input", verify.input, "Verify on a P5 image instead");
  cmd_verify->add_option("--rmq", verify.rmq, "sparse|segtree")->capture_default_str();
  cmd_verify->add_option("--inject-fault", verify.inject_fault, "none|fht|dp (negative control)")
      ->check(CLI::IsMember({"none", "fht", "dp"}))
      ->capture_default_str();

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Time precompute and sweep over a size grid");
  cmd_bench->add_option("--widths", bench.grid.widths, "Comma-separated widths")->delimiter(',');
  cmd_bench->add_option("--heights", bench.grid.heights, "Comma-separated heights")->delimiter(',');
  cmd_bench->add_option("--bands", bench.grid.bands, "Comma-separated band counts")->delimiter(',');
  cmd_bench->add_option("--repeats", bench.grid.repeats, "Repeats per grid point")->capture_default_str();
  cmd_bench->add_option("--gamma-max", bench.grid.gamma_max, "Maximum bending angle")->capture_default_str();
  cmd_bench->add_option("--rmq", bench.rmq, "sparse|segtree")->capture_default_str();
  cmd_bench->add_option("--threads", bench.grid.threads, "Worker threads")->capture_default_str();
  cmd_bench->add_option("--seed", bench.grid.seed, "Image seed")->capture_default_str();
  cmd_bench->add_option("--csv", bench.csv, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_detect) return run_detect(detect);
    if (*cmd_synth) return run_synth(synth);
    if (*cmd_verify) return run_verify(verify);
    if (*cmd_bench) return run_bench_command(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

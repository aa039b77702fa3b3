#include "curvedet/synth.hpp"

#include <random>
#include <string>

#include "curvedet/error.hpp"
#include "curvedet/raster.hpp"

namespace curvedet {

namespace {

constexpr int kMaxAttempts = 10000;

// Column of the ideal segment at row offset t of a link spanning s rows,
// nearest pixel with halves rounded up.
int link_column(int x_top, int dx, int t, int s) {
  const long num = 2L * dx * t + s;
  const long den = 2L * s;
  long q = num / den;
  if (num % den != 0 && num < 0) --q;
  return x_top + static_cast<int>(q);
}

}  // namespace

SynthInstance generate_synthetic(const SynthParams& params) {
  if (params.width < 1 || params.height < 1) throw InvalidParameter("synthetic image must be non-empty");
  if (!(params.gamma_max >= 0.0 && params.gamma_max <= 90.0)) {
    throw InvalidParameter("gamma_max must lie in [0, 90] degrees");
  }
  if (!(params.noise_salt >= 0.0 && params.noise_salt <= 1.0)) {
    throw InvalidParameter("noise_salt must lie in [0, 1]");
  }
  const int s = band_height_for(params.height, params.bands);
  const int k = params.bands;
  const int w = params.width;

  std::mt19937_64 rng(params.seed);
  std::vector<int> xs;
  std::vector<int> admissible;
  bool drawn = false;
  for (int attempt = 0; attempt < kMaxAttempts && !drawn; ++attempt) {
    xs.assign(1, std::uniform_int_distribution<int>(0, w - 1)(rng));
    int prev_shift = -1;
    drawn = true;
    for (int link = 0; link < k; ++link) {
      const AngleWindow window = link == 0 ? AngleWindow{0, 2 * s}
                                           : angle_window(prev_shift, s, params.gamma_max);
      admissible.clear();
      for (int sh = window.lo; sh <= window.hi; ++sh) {
        const int x_next = xs.back() + s - sh;
        if (x_next >= 0 && x_next < w) admissible.push_back(sh);
      }
      if (admissible.empty()) {
        drawn = false;
        break;
      }
      const auto pick = std::uniform_int_distribution<std::size_t>(0, admissible.size() - 1)(rng);
      prev_shift = admissible[pick];
      xs.push_back(xs.back() + s - prev_shift);
    }
  }
  if (!drawn) throw InvalidParameter("could not draw an in-raster polyline for this geometry");

  SynthInstance out;
  out.image = Image(w, params.height);
  for (int link = 0; link < k; ++link) {
    const int dx = xs[static_cast<std::size_t>(link + 1)] - xs[static_cast<std::size_t>(link)];
    for (int t = 0; t < s; ++t) {
      const int y = link * s + t;
      if (y >= params.height) break;
      out.image.at(link_column(xs[static_cast<std::size_t>(link)], dx, t, s), y) = kStrokeValue;
    }
  }
  if (params.noise_salt > 0.0) {
    std::bernoulli_distribution salt(params.noise_salt);
    for (int y = 0; y < params.height; ++y) {
      for (int x = 0; x < w; ++x) {
        if (salt(rng)) out.image.at(x, y) = kStrokeValue;
      }
    }
  }

  out.truth.band_height = s;
  out.truth.gamma_max = params.gamma_max;
  out.truth.noise_salt = params.noise_salt;
  out.truth.seed = params.seed;
  for (int i = 0; i <= k; ++i) out.truth.vertices.push_back({xs[static_cast<std::size_t>(i)], i * s});
  return out;
}

nlohmann::json to_json(const SynthTruth& truth) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Vertex& v : truth.vertices) vertices.push_back({v.x, v.y});
  return {{"vertices", vertices},
          {"band_height", truth.band_height},
          {"gamma_max", truth.gamma_max},
          {"noise_salt", truth.noise_salt},
          {"seed", truth.seed}};
}

SynthTruth synth_truth_from_json(const nlohmann::json& j) {
  SynthTruth truth;
  for (const auto& v : j.at("vertices")) truth.vertices.push_back({v.at(0).get<int>(), v.at(1).get<int>()});
  truth.band_height = j.at("band_height").get<int>();
  truth.gamma_max = j.at("gamma_max").get<double>();
  truth.noise_salt = j.at("noise_salt").get<double>();
  truth.seed = j.at("seed").get<std::uint64_t>();
  return truth;
}

}  // namespace curvedet

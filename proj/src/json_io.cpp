#include "curvedet/json_io.hpp"

#include "curvedet/raster.hpp"

namespace curvedet {

nlohmann::json detection_to_json(const DetectParams& params, int width, int height, int band_height,
                                 const std::vector<ScoredPolyline>& polylines) {
  nlohmann::json out;
  out["params"] = {
      {"bands", params.bands},
      {"gamma_max", params.gamma_max},
      {"sigma", params.sigma},
      {"count", params.count},
      {"min_separation", params.min_separation.value_or(band_height / 2)},
      {"orientation", std::string(to_string(params.orientation))},
      {"rmq", std::string(to_string(params.rmq_backend))},
  };
  out["original_size"] = {width, height};
  out["padded_band_height"] = band_height;
  nlohmann::json list = nlohmann::json::array();
  for (const ScoredPolyline& p : polylines) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const Vertex& v : p.vertices) vertices.push_back({v.x, v.y});
    list.push_back({{"score", p.score}, {"vertices", vertices}});
  }
  out["polylines"] = list;
  return out;
}

std::vector<ScoredPolyline> polylines_from_json(const nlohmann::json& j) {
  std::vector<ScoredPolyline> out;
  for (const auto& item : j.at("polylines")) {
    ScoredPolyline p;
    p.score = item.at("score").get<Pixel>();
    for (const auto& v : item.at("vertices")) p.vertices.push_back({v.at(0).get<int>(), v.at(1).get<int>()});
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace curvedet

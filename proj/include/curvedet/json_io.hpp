#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvedet/pipeline.hpp"

namespace curvedet {

// {"params":{...},"original_size":[w,h],"padded_band_height":s,
//  "polylines":[{"score":int,"vertices":[[x,y],...]}]}
nlohmann::json detection_to_json(const DetectParams& params, int width, int height,
                                 int band_height, const std::vector<ScoredPolyline>& polylines);

std::vector<ScoredPolyline> polylines_from_json(const nlohmann::json& j);

}  // namespace curvedet

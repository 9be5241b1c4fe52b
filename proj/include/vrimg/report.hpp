#pragma once

#include <string>

#include <json.hpp>

#include "vrimg/detect.hpp"

namespace vrimg {

// [{kind, row, col, height, width, colors}, ...]
inline nlohmann::json regions_json(const DetectionResult& result) {
  auto arr = nlohmann::json::array();
  for (const auto& r : result.regions) {
    arr.push_back({{"kind", result.region_class == RegionClass::squares ? "square" : "rect"},
                   {"row", r.region.row()},
                   {"col", r.region.col()},
                   {"height", r.region.height()},
                   {"width", r.region.width()},
                   {"colors", r.colors}});
  }
  return arr;
}

inline std::string regions_json_text(const DetectionResult& result) {
  return regions_json(result).dump(2) + "\n";
}

}  // namespace vrimg

#pragma once

#include <json.hpp>

#include "tomt/scene_graph.hpp"

namespace tomt::detail {

SceneGraph scene_from_json(const nlohmann::json& document);
nlohmann::json scene_to_json(const SceneGraph& scene);

}  // namespace tomt::detail

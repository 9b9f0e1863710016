#pragma once

#include <string>

#include <json.hpp>

#include "core/hierarchy.hpp"
#include "core/model.hpp"

namespace caea {

// JSON state files. Double fields round-trip losslessly (shortest
// representation that parses back to the same bits).

inline constexpr const char* kModelFormat = "caea-model";
inline constexpr const char* kTreeFormat = "hcaea-tree";

nlohmann::json params_to_json(const CaeaParams& params);
CaeaParams params_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const CaeaModel& model);
CaeaModel model_from_json(const nlohmann::json& j);

nlohmann::json tree_to_json(const HcaeaTree& tree);
HcaeaTree tree_from_json(const nlohmann::json& j);

void save_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json_file(const std::string& path);

/// "caea-model" or "hcaea-tree"; throws data_error on anything else.
std::string json_format(const nlohmann::json& j);

}  // namespace caea

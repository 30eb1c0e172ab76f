#pragma once

// Internal JSON helpers shared by the dataset and model file formats.

#include <json.hpp>

#include "collabpred/dataset.hpp"
#include "collabpred/tasks.hpp"
#include "collabpred/view.hpp"

namespace collabpred::serial {

nlohmann::ordered_json view_to_json(const ViewSpec& v);
ViewSpec view_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json task_to_json(const PredictionTask& t);
PredictionTask task_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json encoder_to_json(const EncoderConfig& e);
EncoderConfig encoder_from_json(const nlohmann::ordered_json& j);

Target target_from_string(TaskKind kind, const std::string& s);

} // namespace collabpred::serial

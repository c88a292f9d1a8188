#pragma once

#include <string>

#include <json.hpp>

#include "svm.hpp"

namespace entropic {

inline constexpr int kModelFormatVersion = 1;

/// {"format": "entropic-svm", "version": 1, "classes": [...], "models": [...]}
/// Doubles are written in shortest round-trip form, so decision values of a
/// re-imported model are bit-identical.
nlohmann::json model_to_json(const MulticlassModel& m);
MulticlassModel model_from_json(const nlohmann::json& j);

nlohmann::json binary_model_to_json(const SvmModel& m);
SvmModel binary_model_from_json(const nlohmann::json& j);

KernelSpec kernel_from_json(const nlohmann::json& j);

}  // namespace entropic

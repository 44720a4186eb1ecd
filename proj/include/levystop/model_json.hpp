#pragma once

#include <string_view>

#include "levystop/model.hpp"

namespace levystop {

/// Parses a model from a JSON document with keys
/// {"a", "b", "lambda", "alpha", "mu", "beta"}; missing jump-side keys
/// default to intensity 0. The result is validated.
LevyModel model_from_json_text(std::string_view text);

/// Reads and parses a model JSON file.
LevyModel model_from_json_file(const std::string& path);

}  // namespace levystop

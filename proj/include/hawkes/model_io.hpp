#pragma once

#include <string>

#include "hawkes/model.hpp"

namespace hawkes {

/// Parses the JSON model format: top-level keys "d", "baseline" (array of d
/// tagged objects) and "excitation" (d x d array of tagged objects). Tags:
/// constant, sinusoidal, tabulated, zero / exponential, gamma, constant_step,
/// beta_like. Throws std::invalid_argument with a json-pointer style location
/// on malformed input.
ModelSpec parse_model(const std::string& json_text);
ModelSpec load_model(const std::string& path);

std::string model_to_json(const ModelSpec& model);
void save_model(const ModelSpec& model, const std::string& path);

} // namespace hawkes

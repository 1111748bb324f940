#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "spamlab/models/model.hpp"

namespace spamlab {

// Versioned JSON persistence for every model kind. The document carries
// {schema_version, model_kind, hyperparameters, parameters}; numbers
// round-trip exactly (shortest-representation doubles), so a reloaded model
// scores identically. Unknown kinds or versions raise DataError.
std::string model_to_json_string(const Model& model);
std::unique_ptr<Model> model_from_json_string(const std::string& text);

void save_model(const Model& model, const std::filesystem::path& path);
std::unique_ptr<Model> load_model(const std::filesystem::path& path);

}  // namespace spamlab

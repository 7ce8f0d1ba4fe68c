#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "kgapp/nn/model.hpp"

namespace kgapp::nn {

// Layout: "KGCKPT01", u32 config length, config as key=value lines, u32
// tensor count, then per tensor: u32 name length, name, u32 rank, u64 dims,
// little-endian float32 values.
std::string SerializeCheckpoint(Model& model);
// Rebuilds the model from the embedded config and loads every tensor.
std::unique_ptr<Model> DeserializeCheckpoint(std::string_view bytes);

void SaveCheckpoint(Model& model, const std::filesystem::path& path);
std::unique_ptr<Model> LoadCheckpoint(const std::filesystem::path& path);

std::string FormatModelConfig(const ModelConfig& config);
ModelConfig ParseModelConfig(std::string_view text);

}  // namespace kgapp::nn

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kgapp/nn/layers.hpp"

namespace kgapp::nn {

enum class Architecture { kCnn, kRnn, kLstm, kBiLstm };

inline constexpr Architecture kAllArchitectures[] = {Architecture::kCnn, Architecture::kRnn,
                                                     Architecture::kLstm, Architecture::kBiLstm};

std::string_view ArchitectureName(Architecture arch);
// Accepts cnn, rnn, lstm, bilstm; throws ConfigError otherwise.
Architecture ParseArchitecture(std::string_view name);

struct ModelConfig {
  Architecture architecture = Architecture::kCnn;
  std::size_t stack_depth = 2;
  std::size_t filters = 128;
  std::size_t kernel = 7;
  std::size_t hidden_units = 128;
  double dropout_rate = 0.5;
  std::size_t dense_hidden = 64;
  std::size_t output_heads = 5;
  std::size_t input_dim = 500;  // D

  void Validate() const;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Named view of every tensor that defines a trained model.
struct NamedTensor {
  std::string name;
  Tensor* tensor;
};

// Two stacked feature layers (conv+ReLU, RNN, LSTM or BiLSTM), then batch
// norm, global max pooling, dropout, a sigmoid hidden dense layer and a
// sigmoid output layer. Input [B, K, D], output [B, heads].
class Model {
 public:
  Model(const ModelConfig& config, std::uint64_t seed);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const ModelConfig& config() const noexcept { return config_; }
  Tensor Forward(const Tensor& input, Mode mode);
  void Backward(const Tensor& grad_output);
  std::vector<Parameter*> Parameters();
  // Parameters plus batch-norm running statistics, with stable names.
  std::vector<NamedTensor> Tensors();
  const std::vector<std::unique_ptr<Layer>>& layers() const noexcept { return layers_; }

  std::vector<Tensor> Snapshot();
  void Restore(const std::vector<Tensor>& snapshot);
  void ReseedDropout(std::uint64_t seed);

 private:
  ModelConfig config_;
  std::vector<std::unique_ptr<Layer>> layers_;
  Dropout* dropout_ = nullptr;
};

}  // namespace kgapp::nn

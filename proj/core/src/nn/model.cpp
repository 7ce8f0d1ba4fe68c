#include "kgapp/nn/model.hpp"

#include "kgapp/error.hpp"
#include "kgapp/nn/recurrent.hpp"

namespace kgapp::nn {

std::string_view ArchitectureName(Architecture arch) {
  switch (arch) {
    case Architecture::kCnn: return "cnn";
    case Architecture::kRnn: return "rnn";
    case Architecture::kLstm: return "lstm";
    case Architecture::kBiLstm: return "bilstm";
  }
  return "?";
}

Architecture ParseArchitecture(std::string_view name) {
  for (Architecture a : kAllArchitectures) {
    if (ArchitectureName(a) == name) return a;
  }
  throw ConfigError("unknown architecture '" + std::string(name) + "' (expected cnn, rnn, lstm or bilstm)");
}

void ModelConfig::Validate() const {
  if (stack_depth < 1) throw ConfigError("stack_depth must be at least 1");
  if (input_dim < 1) throw ConfigError("input dimension must be at least 1");
  if (output_heads < 1) throw ConfigError("output_heads must be at least 1");
  if (dense_hidden < 1) throw ConfigError("dense_hidden must be at least 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw ConfigError("dropout_rate must lie in [0, 1)");
  if (architecture == Architecture::kCnn) {
    if (filters < 1) throw ConfigError("filters must be at least 1");
    if (kernel % 2 == 0) throw ConfigError("kernel must be odd");
  } else if (hidden_units < 1) {
    throw ConfigError("hidden_units must be at least 1");
  }
}

Model::Model(const ModelConfig& config, std::uint64_t seed) : config_(config) {
  config_.Validate();
  Rng rng(seed);
  std::size_t width = config_.input_dim;
  for (std::size_t i = 0; i < config_.stack_depth; ++i) {
    switch (config_.architecture) {
      case Architecture::kCnn:
        layers_.push_back(std::make_unique<Conv1d>(width, config_.filters, config_.kernel, rng));
        layers_.push_back(std::make_unique<Relu>());
        width = config_.filters;
        break;
      case Architecture::kRnn:
        layers_.push_back(std::make_unique<SimpleRnn>(width, config_.hidden_units, rng));
        width = config_.hidden_units;
        break;
      case Architecture::kLstm:
        layers_.push_back(std::make_unique<Lstm>(width, config_.hidden_units, rng));
        width = config_.hidden_units;
        break;
      case Architecture::kBiLstm:
        layers_.push_back(std::make_unique<BiLstm>(width, config_.hidden_units, rng));
        width = 2 * config_.hidden_units;
        break;
    }
  }
  layers_.push_back(std::make_unique<BatchNorm>(width));
  layers_.push_back(std::make_unique<GlobalMaxPool>());
  auto dropout = std::make_unique<Dropout>(config_.dropout_rate, DeriveSeed(seed, "dropout"));
  dropout_ = dropout.get();
  layers_.push_back(std::move(dropout));
  layers_.push_back(std::make_unique<Dense>(width, config_.dense_hidden, Activation::kSigmoid, rng));
  layers_.push_back(
      std::make_unique<Dense>(config_.dense_hidden, config_.output_heads, Activation::kSigmoid, rng));
}

Tensor Model::Forward(const Tensor& input, Mode mode) {
  ExpectRank(input, 3, "model input");
  ExpectShape({input.dim(2)}, {config_.input_dim}, "model input features");
  Tensor x = input;
  for (auto& layer : layers_) x = layer->Forward(x, mode);
  return x;
}

void Model::Backward(const Tensor& grad_output) {
  Tensor g = grad_output;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->Backward(g);
}

std::vector<Parameter*> Model::Parameters() {
  std::vector<Parameter*> out;
  for (auto& layer : layers_) {
    for (Parameter* p : layer->Parameters()) out.push_back(p);
  }
  return out;
}

std::vector<NamedTensor> Model::Tensors() {
  std::vector<NamedTensor> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Layer& layer = *layers_[i];
    const std::string prefix = "layer" + std::to_string(i) + "." + std::string(layer.kind()) + ".";
    auto params = layer.Parameters();
    // BiLSTM exposes both directions' parameters under the same short names.
    for (std::size_t j = 0; j < params.size(); ++j) {
      std::string name = params[j]->name;
      if (layer.kind() == "bilstm") name = (j < 3 ? "fwd_" : "bwd_") + name;
      out.push_back({prefix + name, &params[j]->value});
    }
    for (const StateTensor& s : layer.State()) out.push_back({prefix + s.name, s.tensor});
  }
  return out;
}

std::vector<Tensor> Model::Snapshot() {
  std::vector<Tensor> out;
  for (const NamedTensor& t : Tensors()) out.push_back(*t.tensor);
  return out;
}

void Model::Restore(const std::vector<Tensor>& snapshot) {
  auto tensors = Tensors();
  if (snapshot.size() != tensors.size()) throw ShapeError("snapshot does not match model layout");
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    ExpectShape(snapshot[i].shape(), tensors[i].tensor->shape(), tensors[i].name);
    *tensors[i].tensor = snapshot[i];
  }
}

void Model::ReseedDropout(std::uint64_t seed) { dropout_->Reseed(seed); }

}  // namespace kgapp::nn

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kgapp/nn/tensor.hpp"
#include "kgapp/random.hpp"

namespace kgapp::nn {

enum class Mode { kTrain, kInfer };

// Trainable tensor and its gradient accumulator (same shape).
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;

  Parameter() = default;
  Parameter(std::string n, Tensor v) : name(std::move(n)), value(std::move(v)), grad(value.shape()) {}
};

// Non-trainable tensors that still belong in a checkpoint.
struct StateTensor {
  std::string name;
  Tensor* tensor;
};

// Forward caches whatever Backward needs; Backward accumulates parameter
// gradients and returns the gradient with respect to the input.
class Layer {
 public:
  virtual ~Layer() = default;
  virtual std::string_view kind() const = 0;
  virtual Tensor Forward(const Tensor& input, Mode mode) = 0;
  virtual Tensor Backward(const Tensor& grad_output) = 0;
  virtual std::vector<Parameter*> Parameters() { return {}; }
  virtual std::vector<StateTensor> State() { return {}; }
};

void GlorotUniform(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng);

// [B, L, C] -> [B, L, F], "same" zero padding, odd kernel. Weight layout
// [kernel, C, F].
class Conv1d final : public Layer {
 public:
  Conv1d(std::size_t in_channels, std::size_t filters, std::size_t kernel, Rng& rng);
  std::string_view kind() const override { return "conv1d"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;
  std::vector<Parameter*> Parameters() override { return {&weight_, &bias_}; }

  Parameter& weight() { return weight_; }
  Parameter& bias() { return bias_; }

 private:
  std::size_t in_, filters_, kernel_;
  Parameter weight_;
  Parameter bias_;
  Tensor input_;
};

class Relu final : public Layer {
 public:
  std::string_view kind() const override { return "relu"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;

 private:
  Tensor output_;
};

// Normalizes each feature (last axis) over all leading axes. Running
// statistics use momentum 0.9.
class BatchNorm final : public Layer {
 public:
  explicit BatchNorm(std::size_t features, double momentum = 0.9, double epsilon = 1e-5);
  std::string_view kind() const override { return "batch_norm"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;
  std::vector<Parameter*> Parameters() override { return {&gamma_, &beta_}; }
  std::vector<StateTensor> State() override {
    return {{"running_mean", &running_mean_}, {"running_var", &running_var_}};
  }

  Parameter& gamma() { return gamma_; }
  Parameter& beta() { return beta_; }
  const Tensor& running_mean() const { return running_mean_; }
  const Tensor& running_var() const { return running_var_; }

 private:
  std::size_t features_;
  double momentum_, epsilon_;
  Parameter gamma_;
  Parameter beta_;
  Tensor running_mean_;
  Tensor running_var_;
  Tensor xhat_;
  std::vector<double> inv_std_;
  Mode last_mode_ = Mode::kInfer;
};

// [B, L, F] -> [B, F]; gradient flows only to the argmax row.
class GlobalMaxPool final : public Layer {
 public:
  std::string_view kind() const override { return "global_max_pool"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;

 private:
  Shape input_shape_;
  std::vector<std::size_t> argmax_;
};

// Inverted dropout; masks come from the layer's own seeded stream.
class Dropout final : public Layer {
 public:
  Dropout(double rate, std::uint64_t seed);
  std::string_view kind() const override { return "dropout"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;
  void Reseed(std::uint64_t seed) { rng_.seed(seed); }

 private:
  double rate_;
  Rng rng_;
  std::vector<double> mask_;
};

enum class Activation { kNone, kSigmoid };

// [B, in] -> [B, out], y = act(x W + b). Weight layout [in, out].
class Dense final : public Layer {
 public:
  Dense(std::size_t in, std::size_t out, Activation activation, Rng& rng);
  std::string_view kind() const override { return "dense"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;
  std::vector<Parameter*> Parameters() override { return {&weight_, &bias_}; }

  Parameter& weight() { return weight_; }
  Parameter& bias() { return bias_; }

 private:
  std::size_t in_, out_;
  Activation activation_;
  Parameter weight_;
  Parameter bias_;
  Tensor input_;
  Tensor output_;
};

}  // namespace kgapp::nn

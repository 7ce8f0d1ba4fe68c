#include "kgapp/nn/layers.hpp"

#include <cmath>
#include <limits>

#include "kgapp/error.hpp"
#include "kgapp/skipgram.hpp"

namespace kgapp::nn {

void GlorotUniform(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& v : t.values()) v = (2.0 * UniformReal(rng) - 1.0) * limit;
}

// ---------------------------------------------------------------- Conv1d

Conv1d::Conv1d(std::size_t in_channels, std::size_t filters, std::size_t kernel, Rng& rng)
    : in_(in_channels), filters_(filters), kernel_(kernel) {
  if (in_ == 0 || filters_ == 0) throw ShapeError("conv1d needs at least one channel and filter");
  if (kernel_ % 2 == 0) throw ShapeError("conv1d same padding needs an odd kernel");
  weight_ = Parameter("weight", Tensor({kernel_, in_, filters_}));
  bias_ = Parameter("bias", Tensor({filters_}));
  GlorotUniform(weight_.value, kernel_ * in_, kernel_ * filters_, rng);
}

Tensor Conv1d::Forward(const Tensor& input, Mode) {
  ExpectRank(input, 3, "conv1d input");
  ExpectShape({input.dim(2)}, {in_}, "conv1d input channels");
  input_ = input;
  const std::size_t batch = input.dim(0), len = input.dim(1);
  const auto half = static_cast<std::ptrdiff_t>(kernel_ / 2);
  Tensor out({batch, len, filters_});
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t t = 0; t < len; ++t) {
      double* o = &out.at(b, t, 0);
      for (std::size_t f = 0; f < filters_; ++f) o[f] = bias_.value[f];
      for (std::size_t k = 0; k < kernel_; ++k) {
        const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t) + static_cast<std::ptrdiff_t>(k) - half;
        if (src < 0 || src >= static_cast<std::ptrdiff_t>(len)) continue;
        const double* x = &input.at(b, static_cast<std::size_t>(src), 0);
        const double* w = &weight_.value.at(k, 0, 0);
        for (std::size_t c = 0; c < in_; ++c) {
          const double xc = x[c];
          if (xc == 0.0) continue;
          const double* wc = w + c * filters_;
          for (std::size_t f = 0; f < filters_; ++f) o[f] += xc * wc[f];
        }
      }
    }
  }
  ExpectFinite(out, "conv1d");
  return out;
}

Tensor Conv1d::Backward(const Tensor& grad_output) {
  const std::size_t batch = input_.dim(0), len = input_.dim(1);
  ExpectShape(grad_output.shape(), {batch, len, filters_}, "conv1d grad_output");
  const auto half = static_cast<std::ptrdiff_t>(kernel_ / 2);
  Tensor grad_input(input_.shape());
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t t = 0; t < len; ++t) {
      const double* g = &grad_output.at(b, t, 0);
      for (std::size_t f = 0; f < filters_; ++f) bias_.grad[f] += g[f];
      for (std::size_t k = 0; k < kernel_; ++k) {
        const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t) + static_cast<std::ptrdiff_t>(k) - half;
        if (src < 0 || src >= static_cast<std::ptrdiff_t>(len)) continue;
        const double* x = &input_.at(b, static_cast<std::size_t>(src), 0);
        double* gx = &grad_input.at(b, static_cast<std::size_t>(src), 0);
        const double* w = &weight_.value.at(k, 0, 0);
        double* gw = &weight_.grad.at(k, 0, 0);
        for (std::size_t c = 0; c < in_; ++c) {
          const double* wc = w + c * filters_;
          double* gwc = gw + c * filters_;
          double acc = 0.0;
          const double xc = x[c];
          for (std::size_t f = 0; f < filters_; ++f) {
            gwc[f] += xc * g[f];
            acc += wc[f] * g[f];
          }
          gx[c] += acc;
        }
      }
    }
  }
  return grad_input;
}

// ------------------------------------------------------------------ Relu

Tensor Relu::Forward(const Tensor& input, Mode) {
  output_ = input;
  for (auto& v : output_.values()) v = v > 0.0 ? v : 0.0;
  return output_;
}

Tensor Relu::Backward(const Tensor& grad_output) {
  ExpectShape(grad_output.shape(), output_.shape(), "relu grad_output");
  Tensor g = grad_output;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (output_[i] <= 0.0) g[i] = 0.0;
  }
  return g;
}

// ------------------------------------------------------------- BatchNorm

BatchNorm::BatchNorm(std::size_t features, double momentum, double epsilon)
    : features_(features),
      momentum_(momentum),
      epsilon_(epsilon),
      gamma_("gamma", Tensor({features}, 1.0)),
      beta_("beta", Tensor({features}, 0.0)),
      running_mean_({features}, 0.0),
      running_var_({features}, 1.0) {}

Tensor BatchNorm::Forward(const Tensor& input, Mode mode) {
  if (input.rank() < 2 || input.shape().back() != features_) {
    throw ShapeError("batch_norm: expected trailing dimension " + std::to_string(features_) +
                     ", got shape " + ShapeToString(input.shape()));
  }
  const std::size_t rows = input.size() / features_;
  last_mode_ = mode;
  Tensor out(input.shape());
  std::vector<double> mean(features_, 0.0), var(features_, 0.0);
  if (mode == Mode::kTrain) {
    if (rows < 2) throw DomainError("batch_norm in train mode needs a batch of at least 2 rows");
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t f = 0; f < features_; ++f) mean[f] += input[r * features_ + f];
    }
    for (auto& m : mean) m /= static_cast<double>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t f = 0; f < features_; ++f) {
        const double d = input[r * features_ + f] - mean[f];
        var[f] += d * d;
      }
    }
    for (auto& v : var) v /= static_cast<double>(rows);
    for (std::size_t f = 0; f < features_; ++f) {
      running_mean_[f] = momentum_ * running_mean_[f] + (1.0 - momentum_) * mean[f];
      running_var_[f] = momentum_ * running_var_[f] + (1.0 - momentum_) * var[f];
    }
  } else {
    for (std::size_t f = 0; f < features_; ++f) {
      mean[f] = running_mean_[f];
      var[f] = running_var_[f];
    }
  }
  inv_std_.assign(features_, 0.0);
  for (std::size_t f = 0; f < features_; ++f) inv_std_[f] = 1.0 / std::sqrt(var[f] + epsilon_);
  xhat_ = Tensor(input.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t f = 0; f < features_; ++f) {
      const std::size_t i = r * features_ + f;
      xhat_[i] = (input[i] - mean[f]) * inv_std_[f];
      out[i] = gamma_.value[f] * xhat_[i] + beta_.value[f];
    }
  }
  ExpectFinite(out, "batch_norm");
  return out;
}

Tensor BatchNorm::Backward(const Tensor& grad_output) {
  ExpectShape(grad_output.shape(), xhat_.shape(), "batch_norm grad_output");
  const std::size_t rows = grad_output.size() / features_;
  Tensor grad_input(grad_output.shape());
  std::vector<double> sum_g(features_, 0.0), sum_gx(features_, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t f = 0; f < features_; ++f) {
      const std::size_t i = r * features_ + f;
      sum_g[f] += grad_output[i];
      sum_gx[f] += grad_output[i] * xhat_[i];
    }
  }
  for (std::size_t f = 0; f < features_; ++f) {
    gamma_.grad[f] += sum_gx[f];
    beta_.grad[f] += sum_g[f];
  }
  const double n = static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t f = 0; f < features_; ++f) {
      const std::size_t i = r * features_ + f;
      const double g = grad_output[i] * gamma_.value[f];
      if (last_mode_ == Mode::kTrain) {
        grad_input[i] = inv_std_[f] / n *
                        (n * g - gamma_.value[f] * sum_g[f] - xhat_[i] * gamma_.value[f] * sum_gx[f]);
      } else {
        grad_input[i] = g * inv_std_[f];
      }
    }
  }
  return grad_input;
}

// --------------------------------------------------------- GlobalMaxPool

Tensor GlobalMaxPool::Forward(const Tensor& input, Mode) {
  ExpectRank(input, 3, "global_max_pool input");
  const std::size_t batch = input.dim(0), len = input.dim(1), feat = input.dim(2);
  if (len == 0) throw ShapeError("global_max_pool over an empty sequence");
  input_shape_ = input.shape();
  argmax_.assign(batch * feat, 0);
  Tensor out({batch, feat});
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t f = 0; f < feat; ++f) {
      double best = -std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t t = 0; t < len; ++t) {
        const double v = input.at(b, t, f);
        if (v > best) {
          best = v;
          arg = t;
        }
      }
      out.at(b, f) = best;
      argmax_[b * feat + f] = arg;
    }
  }
  return out;
}

Tensor GlobalMaxPool::Backward(const Tensor& grad_output) {
  const std::size_t batch = input_shape_[0], feat = input_shape_[2];
  ExpectShape(grad_output.shape(), {batch, feat}, "global_max_pool grad_output");
  Tensor grad_input(input_shape_);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t f = 0; f < feat; ++f) {
      grad_input.at(b, argmax_[b * feat + f], f) += grad_output.at(b, f);
    }
  }
  return grad_input;
}

// --------------------------------------------------------------- Dropout

Dropout::Dropout(double rate, std::uint64_t seed) : rate_(rate), rng_(seed) {
  if (!(rate >= 0.0 && rate < 1.0)) throw DomainError("dropout rate must lie in [0, 1)");
}

Tensor Dropout::Forward(const Tensor& input, Mode mode) {
  mask_.assign(input.size(), 1.0);
  if (mode == Mode::kInfer || rate_ == 0.0) return input;
  const double keep_scale = 1.0 / (1.0 - rate_);
  Tensor out = input;
  for (std::size_t i = 0; i < out.size(); ++i) {
    mask_[i] = UniformReal(rng_) < rate_ ? 0.0 : keep_scale;
    out[i] *= mask_[i];
  }
  return out;
}

Tensor Dropout::Backward(const Tensor& grad_output) {
  if (grad_output.size() != mask_.size()) throw ShapeError("dropout grad_output size mismatch");
  Tensor g = grad_output;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= mask_[i];
  return g;
}

// ----------------------------------------------------------------- Dense

Dense::Dense(std::size_t in, std::size_t out, Activation activation, Rng& rng)
    : in_(in), out_(out), activation_(activation) {
  weight_ = Parameter("weight", Tensor({in_, out_}));
  bias_ = Parameter("bias", Tensor({out_}));
  GlorotUniform(weight_.value, in_, out_, rng);
}

Tensor Dense::Forward(const Tensor& input, Mode) {
  ExpectRank(input, 2, "dense input");
  ExpectShape({input.dim(1)}, {in_}, "dense input features");
  input_ = input;
  const std::size_t batch = input.dim(0);
  Tensor out({batch, out_});
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t o = 0; o < out_; ++o) out.at(b, o) = bias_.value[o];
    for (std::size_t i = 0; i < in_; ++i) {
      const double x = input.at(b, i);
      const double* w = &weight_.value.at(i, 0);
      for (std::size_t o = 0; o < out_; ++o) out.at(b, o) += x * w[o];
    }
  }
  if (activation_ == Activation::kSigmoid) {
    for (auto& v : out.values()) v = Sigmoid(v);
  }
  output_ = out;
  ExpectFinite(out, "dense");
  return out;
}

Tensor Dense::Backward(const Tensor& grad_output) {
  const std::size_t batch = input_.dim(0);
  ExpectShape(grad_output.shape(), {batch, out_}, "dense grad_output");
  Tensor g = grad_output;
  if (activation_ == Activation::kSigmoid) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] *= output_[i] * (1.0 - output_[i]);
  }
  Tensor grad_input({batch, in_});
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t o = 0; o < out_; ++o) bias_.grad[o] += g.at(b, o);
    for (std::size_t i = 0; i < in_; ++i) {
      const double x = input_.at(b, i);
      const double* w = &weight_.value.at(i, 0);
      double* gw = &weight_.grad.at(i, 0);
      double acc = 0.0;
      for (std::size_t o = 0; o < out_; ++o) {
        gw[o] += x * g.at(b, o);
        acc += w[o] * g.at(b, o);
      }
      grad_input.at(b, i) = acc;
    }
  }
  return grad_input;
}

}  // namespace kgapp::nn

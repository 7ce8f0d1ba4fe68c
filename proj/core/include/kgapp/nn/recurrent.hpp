#pragma once

#include <span>
#include <vector>

#include "kgapp/nn/layers.hpp"

namespace kgapp::nn {

// Single-step kernels. Weight layouts: input weight [G*H, C], recurrent
// weight [G*H, H], bias [G*H], with G = 1 (simple RNN) or 4 (LSTM gates in
// the order input, forget, candidate, output).

// h' = tanh(W x + U h + b)
void RnnStep(std::span<const double> x, std::span<const double> h, const Tensor& w,
             const Tensor& u, const Tensor& b, std::span<double> h_out);

struct LstmGates {
  std::vector<double> i, f, g, o;  // post-activation
};

// i, f, o = sigmoid(.), g = tanh(.); c' = f*c + i*g; h' = o*tanh(c')
void LstmStep(std::span<const double> x, std::span<const double> h, std::span<const double> c,
              const Tensor& w, const Tensor& u, const Tensor& b, std::span<double> h_out,
              std::span<double> c_out, LstmGates* gates = nullptr);

// [B, L, C] -> [B, L, H], zero initial state, full-sequence BPTT.
class SimpleRnn final : public Layer {
 public:
  SimpleRnn(std::size_t input, std::size_t hidden, Rng& rng);
  std::string_view kind() const override { return "rnn"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;
  std::vector<Parameter*> Parameters() override { return {&w_, &u_, &b_}; }

  Parameter& w() { return w_; }
  Parameter& u() { return u_; }
  Parameter& b() { return b_; }

 private:
  std::size_t input_, hidden_;
  Parameter w_, u_, b_;
  Tensor x_;
  Tensor h_;  // [B, L, H]
};

// [B, L, C] -> [B, L, H]. With `reverse`, the sequence is consumed from the
// end and outputs stay aligned to input positions.
class Lstm final : public Layer {
 public:
  Lstm(std::size_t input, std::size_t hidden, Rng& rng, bool reverse = false);
  std::string_view kind() const override { return reverse_ ? "lstm_reverse" : "lstm"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;
  std::vector<Parameter*> Parameters() override { return {&w_, &u_, &b_}; }

  Parameter& w() { return w_; }
  Parameter& u() { return u_; }
  Parameter& b() { return b_; }
  std::size_t hidden() const noexcept { return hidden_; }

 private:
  std::size_t input_, hidden_;
  bool reverse_;
  Parameter w_, u_, b_;
  Tensor x_;
  // Per (batch, step): gates [4H], cell [H], hidden [H], in processing order.
  std::vector<double> gates_, cells_, hiddens_;
};

// Concatenates a forward and a reverse LSTM: output [B, L, 2H].
class BiLstm final : public Layer {
 public:
  BiLstm(std::size_t input, std::size_t hidden, Rng& rng);
  std::string_view kind() const override { return "bilstm"; }
  Tensor Forward(const Tensor& input, Mode mode) override;
  Tensor Backward(const Tensor& grad_output) override;
  std::vector<Parameter*> Parameters() override;

  Lstm& forward() { return fwd_; }
  Lstm& backward() { return bwd_; }

 private:
  std::size_t hidden_;
  Lstm fwd_;
  Lstm bwd_;
};

}  // namespace kgapp::nn

#pragma once

#include <vector>

#include "kgapp/nn/layers.hpp"

namespace kgapp::nn {

inline constexpr double kProbabilityClamp = 1e-7;

struct LossResult {
  double loss = 0.0;
  Tensor grad;  // d loss / d predictions
};

// Binary cross-entropy averaged over every entry (heads and batch rows).
// Predictions are clamped to [1e-7, 1 - 1e-7]; the gradient is zero where
// the clamp is active.
LossResult BceLoss(const Tensor& predictions, const Tensor& targets);

// w -= lr * grad, then grad = 0.
void SgdStep(const std::vector<Parameter*>& params, double lr);
void ZeroGrad(const std::vector<Parameter*>& params);

}  // namespace kgapp::nn

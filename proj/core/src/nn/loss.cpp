#include "kgapp/nn/loss.hpp"

#include <algorithm>
#include <cmath>

#include "kgapp/error.hpp"

namespace kgapp::nn {

LossResult BceLoss(const Tensor& predictions, const Tensor& targets) {
  ExpectShape(targets.shape(), predictions.shape(), "bce targets");
  if (predictions.size() == 0) throw ShapeError("bce loss on an empty tensor");
  LossResult r;
  r.grad = Tensor(predictions.shape());
  const double n = static_cast<double>(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double raw = predictions[i];
    const double p = std::clamp(raw, kProbabilityClamp, 1.0 - kProbabilityClamp);
    const double y = targets[i];
    r.loss -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
    if (raw == p) r.grad[i] = (-y / p + (1.0 - y) / (1.0 - p)) / n;
  }
  r.loss /= n;
  return r;
}

void SgdStep(const std::vector<Parameter*>& params, double lr) {
  for (Parameter* p : params) {
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      p->value[i] -= lr * p->grad[i];
      p->grad[i] = 0.0;
    }
  }
}

void ZeroGrad(const std::vector<Parameter*>& params) {
  for (Parameter* p : params) p->grad.Fill(0.0);
}

}  // namespace kgapp::nn

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgapp/random.hpp"
#include "kgapp/walks.hpp"

namespace kgapp {

struct SkipGramOptions {
  int dim = 500;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  // Decays linearly to lr * 1e-4 over the whole run.
  double lr = 0.025;
  double sampling_power = 0.75;
  std::uint64_t seed = 0;
};

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::vector<std::string> vocab, std::size_t dim, std::vector<float> vectors);

  std::size_t size() const noexcept { return vocab_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  // Empty span when the token has no vector.
  std::span<const float> Vector(const std::string& token) const;
  std::span<const float> Row(std::size_t index) const;

  // Text format: header `count dim`, then `token v1 ... vD` per line.
  std::string Format() const;
  static EmbeddingTable Parse(std::string_view text);

 private:
  std::vector<std::string> vocab_;
  std::size_t dim_ = 0;
  std::vector<float> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Negative log-likelihood of one SGNS example:
//   -log s(u.v) - sum_k log s(-u.n_k)
// with u the center input vector, v the context output vector.
template <typename T>
double SgnsPairLoss(std::span<const T> center, std::span<const T> context,
                    std::span<const std::span<const T>> negatives) {
  auto dot = [](std::span<const T> a, std::span<const T> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
    return s;
  };
  double loss = -std::log(Sigmoid(dot(center, context)));
  for (auto n : negatives) loss -= std::log(Sigmoid(-dot(center, n)));
  return loss;
}

// Analytic gradient of SgnsPairLoss with respect to the center, the context
// and each negative vector.
template <typename T>
void SgnsPairGradient(std::span<const T> center, std::span<const T> context,
                      std::span<const std::span<const T>> negatives, std::span<T> grad_center,
                      std::span<T> grad_context, std::span<const std::span<T>> grad_negatives) {
  auto dot = [](std::span<const T> a, std::span<const T> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
    return s;
  };
  for (auto& g : grad_center) g = 0;
  const double gp = Sigmoid(dot(center, context)) - 1.0;
  for (std::size_t i = 0; i < center.size(); ++i) {
    grad_center[i] += static_cast<T>(gp * context[i]);
    grad_context[i] = static_cast<T>(gp * center[i]);
  }
  for (std::size_t k = 0; k < negatives.size(); ++k) {
    const double gn = Sigmoid(dot(center, negatives[k]));
    for (std::size_t i = 0; i < center.size(); ++i) {
      grad_center[i] += static_cast<T>(gn * negatives[k][i]);
      grad_negatives[k][i] = static_cast<T>(gn * center[i]);
    }
  }
}

// Skip-gram with negative sampling over token sequences. Input vectors are
// initialized uniformly in [-0.5/dim, 0.5/dim), output vectors to zero.
class SgnsModel {
 public:
  SgnsModel(std::vector<std::string> vocab, std::vector<std::uint64_t> counts, int dim,
            double sampling_power, std::uint64_t seed);

  // One SGD step on (center, context, negatives). Returns the example loss
  // measured before the update.
  double Update(std::size_t center, std::size_t context, std::span<const std::size_t> negatives,
                double lr);
  double Loss(std::size_t center, std::size_t context, std::span<const std::size_t> negatives) const;

  // Draws from counts^power.
  std::size_t SampleNegative(Rng& rng) const;

  std::size_t vocab_size() const noexcept { return vocab_.size(); }
  int dim() const noexcept { return dim_; }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  std::span<const float> InputVector(std::size_t i) const;
  std::span<const float> OutputVector(std::size_t i) const;
  EmbeddingTable ToTable() const;

 private:
  std::vector<std::string> vocab_;
  int dim_;
  std::vector<float> input_;
  std::vector<float> output_;
  std::vector<double> cumulative_;
  std::vector<float> scratch_;
};

struct SkipGramStats {
  std::uint64_t pairs = 0;
  double mean_loss_first_epoch = 0;
  double mean_loss_last_epoch = 0;
};

// Trains one model over the whole walk corpus and returns the input
// vectors. Single-threaded and bit-reproducible for a fixed seed.
EmbeddingTable TrainSkipGram(const std::vector<Walk>& walks, const SkipGramOptions& options,
                             SkipGramStats* stats = nullptr);

double CosineSimilarity(std::span<const float> a, std::span<const float> b);

}  // namespace kgapp

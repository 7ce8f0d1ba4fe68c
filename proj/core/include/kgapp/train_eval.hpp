#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgapp/corpus.hpp"
#include "kgapp/embedding.hpp"
#include "kgapp/metrics.hpp"
#include "kgapp/nn/model.hpp"

namespace kgapp {

struct TrainConfig {
  double split_ratio = 0.8;
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  double lr = 0.01;
  std::size_t patience = 4;
  std::size_t folds = 10;
  double threshold = 0.5;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Classifier inputs and gold labels; every matrix has the same K x D.
struct Dataset {
  std::vector<EmbeddingMatrix> inputs;
  std::vector<TraitLabels> labels;

  std::size_t size() const noexcept { return inputs.size(); }
  std::size_t rows() const { return inputs.empty() ? 0 : inputs.front().rows; }
  std::size_t dim() const { return inputs.empty() ? 0 : inputs.front().dim; }
  void Validate() const;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded shuffle of [0, n); the train part has floor(n * ratio) items.
Split SplitTrainTest(std::size_t n, double ratio, std::uint64_t seed);
// Seeded shuffle of `items` dealt into k folds whose sizes differ by at
// most one. Throws DomainError when there are fewer items than folds.
std::vector<std::vector<std::size_t>> KFold(std::span<const std::size_t> items, std::size_t k,
                                            std::uint64_t seed);

// Patience-based stopping on validation loss; strict improvement resets.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience);
  // Returns true when training should stop after this epoch.
  bool Observe(double val_loss);
  bool improved() const noexcept { return improved_; }
  std::size_t best_epoch() const noexcept { return best_epoch_; }  // 1-based
  double best_loss() const noexcept { return best_loss_; }
  std::size_t epochs_seen() const noexcept { return epochs_; }

 private:
  std::size_t patience_;
  std::size_t epochs_ = 0;
  std::size_t best_epoch_ = 0;
  std::size_t since_best_ = 0;
  double best_loss_ = 0.0;
  bool improved_ = false;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  double best_val_loss = 0.0;
  bool stopped_early = false;
};

// Copies the selected matrices into a [N, K, D] batch and [N, 5] targets.
nn::Tensor BatchInputs(const Dataset& data, std::span<const std::size_t> indices);
nn::Tensor BatchTargets(const Dataset& data, std::span<const std::size_t> indices);

// Mean BCE over `indices` in inference mode.
double EvaluateLoss(nn::Model& model, const Dataset& data, std::span<const std::size_t> indices,
                    std::size_t batch_size);

// Mini-batch SGD with early stopping; leaves the best-validation-loss
// weights in `model`. A non-finite loss raises TrainingError naming the
// epoch. Needs at least two training items (batch norm).
TrainHistory TrainModel(nn::Model& model, const Dataset& data, std::span<const std::size_t> train,
                        std::span<const std::size_t> validation, const TrainConfig& config,
                        std::uint64_t seed);

// Head probabilities, one row per index.
nn::Tensor PredictProbabilities(nn::Model& model, const Dataset& data, std::span<const std::size_t> indices,
                                std::size_t batch_size);
// label_i = probability_i >= threshold.
TraitLabels PredictLabels(std::span<const double> probabilities, double threshold);
std::vector<TraitLabels> PredictLabels(nn::Model& model, const Dataset& data,
                                       std::span<const std::size_t> indices, const TrainConfig& config);

struct MetricSummary {
  std::array<std::array<double, kTraitCount + 1>, 4> mean{};  // [metric][trait..., avg]
  std::array<std::array<double, kTraitCount + 1>, 4> stddev{};
};

MetricSummary SummarizeFolds(std::span<const MetricsReport> folds);

struct FoldResult {
  std::size_t fold = 0;
  TrainHistory history;
  MetricsReport metrics;  // on the fold's own validation items
};

struct ArchitectureResult {
  nn::ModelConfig model_config;
  std::vector<FoldResult> folds;
  MetricSummary cv;
  std::size_t selected_fold = 0;
  MetricsReport held_out;
  std::array<double, kTraitCount> baseline{};
  std::unique_ptr<nn::Model> model;
};

// k-fold CV over the split's train part; the fold model with the lowest
// best validation loss is scored once on the held-out part.
ArchitectureResult RunArchitecture(const nn::ModelConfig& model_config, const TrainConfig& config,
                                   const Dataset& data, const Split& split);

// Table layout: rows metric x architecture, columns O C E A N Avg.
std::string FormatMetricTable(std::span<const ArchitectureResult> results, bool cv_means);
std::string FormatHistory(std::span<const ArchitectureResult> results);
// Machine-readable report; stable key order and number formatting.
std::string FormatJsonReport(std::span<const ArchitectureResult> results, const TrainConfig& config,
                             const Split& split, std::span<const std::string> essay_ids);

}  // namespace kgapp

namespace kgapp {

// Round-trips everything in an ArchitectureResult except the model,
// held-out metrics and baseline, which are recomputed at evaluation time.
std::string FormatTrainingSummary(const ArchitectureResult& result);
ArchitectureResult ParseTrainingSummary(std::string_view json);

}  // namespace kgapp

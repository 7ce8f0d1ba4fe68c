#pragma once

#include <array>
#include <span>
#include <vector>

#include "kgapp/corpus.hpp"

namespace kgapp {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Precision, recall and f-measure are 0 with their flag set when the
// denominator vanishes.
struct TraitMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double accuracy = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f_measure_undefined = false;
};

enum class Metric { kPrecision, kRecall, kFMeasure, kAccuracy };
inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::kPrecision, Metric::kRecall,
                                                      Metric::kFMeasure, Metric::kAccuracy};
std::string_view MetricName(Metric m);
double MetricValue(const TraitMetrics& m, Metric which);

// Throws DomainError when the lengths differ.
ConfusionCounts CountConfusion(std::span<const bool> gold, std::span<const bool> predicted);
ConfusionCounts CountConfusion(std::span<const TraitLabels> gold, std::span<const TraitLabels> predicted,
                               Trait trait);

// Throws DomainError when the counts are all zero.
TraitMetrics ComputeMetrics(const ConfusionCounts& c);

// Per-trait metrics plus the macro average over the five traits.
struct MetricsReport {
  std::array<ConfusionCounts, kTraitCount> counts{};
  std::array<TraitMetrics, kTraitCount> traits{};
  TraitMetrics average;
};

MetricsReport EvaluateLabels(std::span<const TraitLabels> gold, std::span<const TraitLabels> predicted);

// Accuracy of always predicting the more frequent class of each trait,
// with the majority taken over `reference` and scored on `gold`.
std::array<double, kTraitCount> MajorityBaseline(std::span<const TraitLabels> reference,
                                                 std::span<const TraitLabels> gold);

}  // namespace kgapp

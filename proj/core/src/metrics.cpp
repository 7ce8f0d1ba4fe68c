#include "kgapp/metrics.hpp"

#include "kgapp/error.hpp"

namespace kgapp {

std::string_view MetricName(Metric m) {
  switch (m) {
    case Metric::kPrecision: return "precision";
    case Metric::kRecall: return "recall";
    case Metric::kFMeasure: return "f_measure";
    case Metric::kAccuracy: return "accuracy";
  }
  return "?";
}

double MetricValue(const TraitMetrics& m, Metric which) {
  switch (which) {
    case Metric::kPrecision: return m.precision;
    case Metric::kRecall: return m.recall;
    case Metric::kFMeasure: return m.f_measure;
    case Metric::kAccuracy: return m.accuracy;
  }
  return 0.0;
}

ConfusionCounts CountConfusion(std::span<const bool> gold, std::span<const bool> predicted) {
  if (gold.size() != predicted.size()) {
    throw DomainError("confusion counts: " + std::to_string(gold.size()) + " gold labels vs " +
                      std::to_string(predicted.size()) + " predictions");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i]) {
      predicted[i] ? ++c.tp : ++c.fn;
    } else {
      predicted[i] ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

ConfusionCounts CountConfusion(std::span<const TraitLabels> gold, std::span<const TraitLabels> predicted,
                               Trait trait) {
  if (gold.size() != predicted.size()) {
    throw DomainError("confusion counts: " + std::to_string(gold.size()) + " gold labels vs " +
                      std::to_string(predicted.size()) + " predictions");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool gi = gold[i].get(trait), pi = predicted[i].get(trait);
    if (gi) {
      pi ? ++c.tp : ++c.fn;
    } else {
      pi ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

TraitMetrics ComputeMetrics(const ConfusionCounts& c) {
  if (c.total() == 0) throw DomainError("metrics over an empty evaluation set");
  TraitMetrics m;
  const auto d = [](std::size_t v) { return static_cast<double>(v); };
  m.accuracy = d(c.tp + c.tn) / d(c.tp + c.tn + c.fp + c.fn);
  if (c.tp + c.fp == 0) {
    m.precision_undefined = true;
  } else {
    m.precision = d(c.tp) / d(c.tp + c.fp);
  }
  if (c.tp + c.fn == 0) {
    m.recall_undefined = true;
  } else {
    m.recall = d(c.tp) / d(c.tp + c.fn);
  }
  if (m.precision + m.recall == 0.0) {
    m.f_measure_undefined = true;
  } else {
    m.f_measure = (2.0 * m.precision * m.recall) / (m.precision + m.recall);
  }
  return m;
}

MetricsReport EvaluateLabels(std::span<const TraitLabels> gold, std::span<const TraitLabels> predicted) {
  MetricsReport r;
  for (Trait t : kAllTraits) {
    const auto i = static_cast<std::size_t>(t);
    r.counts[i] = CountConfusion(gold, predicted, t);
    r.traits[i] = ComputeMetrics(r.counts[i]);
    r.average.precision += r.traits[i].precision / kTraitCount;
    r.average.recall += r.traits[i].recall / kTraitCount;
    r.average.f_measure += r.traits[i].f_measure / kTraitCount;
    r.average.accuracy += r.traits[i].accuracy / kTraitCount;
  }
  return r;
}

std::array<double, kTraitCount> MajorityBaseline(std::span<const TraitLabels> reference,
                                                 std::span<const TraitLabels> gold) {
  if (gold.empty()) throw DomainError("majority baseline over an empty evaluation set");
  std::array<double, kTraitCount> out{};
  for (Trait t : kAllTraits) {
    std::size_t positives = 0;
    for (const auto& l : reference) positives += l.get(t) ? 1 : 0;
    const bool majority = 2 * positives >= reference.size();
    std::size_t hits = 0;
    for (const auto& l : gold) hits += l.get(t) == majority ? 1 : 0;
    out[static_cast<std::size_t>(t)] = static_cast<double>(hits) / static_cast<double>(gold.size());
  }
  return out;
}

}  // namespace kgapp

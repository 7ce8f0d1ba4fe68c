#include "kgapp/train_eval.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/nn/checkpoint.hpp"
#include "kgapp/nn/loss.hpp"
#include "kgapp/random.hpp"

namespace kgapp {

void TrainConfig::Validate() const {
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) throw ConfigError("split_ratio must lie in (0, 1)");
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ConfigError("lr must be positive");
  if (patience < 1) throw ConfigError("patience must be at least 1");
  if (folds < 2) throw ConfigError("folds must be at least 2");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("threshold must lie in (0, 1)");
}

void Dataset::Validate() const {
  if (inputs.size() != labels.size()) throw DomainError("dataset inputs and labels differ in length");
  for (const auto& m : inputs) {
    if (m.rows != rows() || m.dim != dim()) {
      throw ShapeError("essay " + m.essay_id + " matrix is " + std::to_string(m.rows) + "x" +
                       std::to_string(m.dim) + ", expected " + std::to_string(rows()) + "x" +
                       std::to_string(dim()));
    }
  }
}

namespace {

void Shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[UniformIndex(rng, i)]);
}

}  // namespace

Split SplitTrainTest(std::size_t n, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("split ratio must lie in (0, 1)");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  Shuffle(order, rng);
  const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio));
  Split s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  return s;
}

std::vector<std::vector<std::size_t>> KFold(std::span<const std::size_t> items, std::size_t k,
                                            std::uint64_t seed) {
  if (k < 2) throw DomainError("k-fold needs k >= 2");
  if (items.size() < k) {
    throw DomainError("k-fold: " + std::to_string(items.size()) + " items cannot fill " + std::to_string(k) +
                      " folds");
  }
  std::vector<std::size_t> order(items.begin(), items.end());
  Rng rng(seed);
  Shuffle(order, rng);
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < order.size(); ++i) folds[i % k].push_back(order[i]);
  return folds;
}

EarlyStopping::EarlyStopping(std::size_t patience) : patience_(patience) {
  if (patience < 1) throw DomainError("patience must be at least 1");
}

bool EarlyStopping::Observe(double val_loss) {
  ++epochs_;
  improved_ = best_epoch_ == 0 || val_loss < best_loss_;
  if (improved_) {
    best_loss_ = val_loss;
    best_epoch_ = epochs_;
    since_best_ = 0;
    return false;
  }
  return ++since_best_ >= patience_;
}

nn::Tensor BatchInputs(const Dataset& data, std::span<const std::size_t> indices) {
  const std::size_t k = data.rows(), d = data.dim();
  nn::Tensor x({indices.size(), k, d});
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const auto& m = data.inputs.at(indices[b]);
    double* dst = x.data() + b * k * d;
    for (std::size_t i = 0; i < k * d; ++i) dst[i] = static_cast<double>(m.data[i]);
  }
  return x;
}

nn::Tensor BatchTargets(const Dataset& data, std::span<const std::size_t> indices) {
  nn::Tensor y({indices.size(), kTraitCount});
  for (std::size_t b = 0; b < indices.size(); ++b) {
    for (Trait t : kAllTraits) {
      y.at(b, static_cast<std::size_t>(t)) = data.labels.at(indices[b]).get(t) ? 1.0 : 0.0;
    }
  }
  return y;
}

double EvaluateLoss(nn::Model& model, const Dataset& data, std::span<const std::size_t> indices,
                    std::size_t batch_size) {
  if (indices.empty()) throw DomainError("loss over an empty set");
  double total = 0.0;
  for (std::size_t start = 0; start < indices.size(); start += batch_size) {
    const auto batch = indices.subspan(start, std::min(batch_size, indices.size() - start));
    const auto out = model.Forward(BatchInputs(data, batch), nn::Mode::kInfer);
    total += nn::BceLoss(out, BatchTargets(data, batch)).loss * static_cast<double>(batch.size());
  }
  return total / static_cast<double>(indices.size());
}

namespace {

// Batches of `size`; a trailing singleton joins the previous batch so that
// batch norm always sees at least two rows.
std::vector<std::span<const std::size_t>> MakeBatches(std::span<const std::size_t> order, std::size_t size) {
  std::vector<std::span<const std::size_t>> out;
  const std::size_t step = std::max<std::size_t>(size, 2);
  for (std::size_t start = 0; start < order.size(); start += step) {
    std::size_t len = std::min(step, order.size() - start);
    if (order.size() - start - len == 1) ++len;
    out.push_back(order.subspan(start, len));
    if (start + len == order.size()) break;
  }
  return out;
}

}  // namespace

TrainHistory TrainModel(nn::Model& model, const Dataset& data, std::span<const std::size_t> train,
                        std::span<const std::size_t> validation, const TrainConfig& config,
                        std::uint64_t seed) {
  config.Validate();
  if (train.size() < 2) throw DomainError("training needs at least two items");
  if (validation.empty()) throw DomainError("training needs a non-empty validation set");
  Rng rng(DeriveSeed(seed, "shuffle"));
  model.ReseedDropout(DeriveSeed(seed, "dropout"));
  auto params = model.Parameters();
  nn::ZeroGrad(params);

  TrainHistory history;
  EarlyStopping stopper(config.patience);
  std::vector<nn::Tensor> best = model.Snapshot();
  std::vector<std::size_t> order(train.begin(), train.end());
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    Shuffle(order, rng);
    double train_total = 0.0;
    EpochRecord rec;
    rec.epoch = epoch;
    try {
      for (auto batch : MakeBatches(order, config.batch_size)) {
        const auto out = model.Forward(BatchInputs(data, batch), nn::Mode::kTrain);
        auto loss = nn::BceLoss(out, BatchTargets(data, batch));
        if (!std::isfinite(loss.loss)) throw DomainError("non-finite loss");
        train_total += loss.loss * static_cast<double>(batch.size());
        model.Backward(loss.grad);
        nn::SgdStep(params, config.lr);
      }
      rec.train_loss = train_total / static_cast<double>(order.size());
      rec.val_loss = EvaluateLoss(model, data, validation, config.batch_size);
      if (!std::isfinite(rec.val_loss)) throw DomainError("non-finite validation loss");
    } catch (const DomainError& e) {
      throw TrainingError("training diverged in epoch " + std::to_string(epoch) + ": " + e.what());
    }
    history.epochs.push_back(rec);
    const bool stop = stopper.Observe(rec.val_loss);
    if (stopper.improved()) best = model.Snapshot();
    if (stop) {
      history.stopped_early = epoch < config.epochs;
      break;
    }
  }
  model.Restore(best);
  history.best_epoch = stopper.best_epoch();
  history.best_val_loss = stopper.best_loss();
  return history;
}

nn::Tensor PredictProbabilities(nn::Model& model, const Dataset& data, std::span<const std::size_t> indices,
                                std::size_t batch_size) {
  const std::size_t heads = model.config().output_heads;
  nn::Tensor out({indices.size(), heads});
  for (std::size_t start = 0; start < indices.size(); start += batch_size) {
    const auto batch = indices.subspan(start, std::min(batch_size, indices.size() - start));
    const auto p = model.Forward(BatchInputs(data, batch), nn::Mode::kInfer);
    for (std::size_t b = 0; b < batch.size(); ++b) {
      for (std::size_t h = 0; h < heads; ++h) out.at(start + b, h) = p.at(b, h);
    }
  }
  return out;
}

TraitLabels PredictLabels(std::span<const double> probabilities, double threshold) {
  if (probabilities.size() != kTraitCount) throw ShapeError("expected one probability per trait");
  TraitLabels l;
  for (Trait t : kAllTraits) l.set(t, probabilities[static_cast<std::size_t>(t)] >= threshold);
  return l;
}

std::vector<TraitLabels> PredictLabels(nn::Model& model, const Dataset& data,
                                       std::span<const std::size_t> indices, const TrainConfig& config) {
  const auto probs = PredictProbabilities(model, data, indices, config.batch_size);
  std::vector<TraitLabels> out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.push_back(PredictLabels(std::span<const double>(probs.data() + i * kTraitCount, kTraitCount),
                                config.threshold));
  }
  return out;
}

namespace {

std::array<double, kTraitCount + 1> MetricRow(const MetricsReport& r, Metric m) {
  std::array<double, kTraitCount + 1> row{};
  for (std::size_t t = 0; t < kTraitCount; ++t) row[t] = MetricValue(r.traits[t], m);
  row[kTraitCount] = MetricValue(r.average, m);
  return row;
}

std::vector<TraitLabels> GoldLabels(const Dataset& data, std::span<const std::size_t> indices) {
  std::vector<TraitLabels> out;
  for (auto i : indices) out.push_back(data.labels.at(i));
  return out;
}

}  // namespace

MetricSummary SummarizeFolds(std::span<const MetricsReport> folds) {
  MetricSummary s;
  if (folds.empty()) return s;
  const double n = static_cast<double>(folds.size());
  for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
    for (const auto& f : folds) {
      const auto row = MetricRow(f, kAllMetrics[m]);
      for (std::size_t c = 0; c <= kTraitCount; ++c) s.mean[m][c] += row[c] / n;
    }
    for (const auto& f : folds) {
      const auto row = MetricRow(f, kAllMetrics[m]);
      for (std::size_t c = 0; c <= kTraitCount; ++c) {
        const double d = row[c] - s.mean[m][c];
        s.stddev[m][c] += d * d / n;
      }
    }
    for (auto& v : s.stddev[m]) v = std::sqrt(v);
  }
  return s;
}

ArchitectureResult RunArchitecture(const nn::ModelConfig& model_config, const TrainConfig& config,
                                   const Dataset& data, const Split& split) {
  config.Validate();
  data.Validate();
  if (split.test.empty()) throw DomainError("held-out split is empty");
  const std::string arch(nn::ArchitectureName(model_config.architecture));
  ArchitectureResult result;
  result.model_config = model_config;
  const auto folds = KFold(split.train, config.folds, DeriveSeed(config.seed, "folds"));
  std::vector<MetricsReport> fold_metrics;
  double best_loss = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
    }
    const std::string tag = arch + "/fold" + std::to_string(f);
    auto model = std::make_unique<nn::Model>(model_config, DeriveSeed(config.seed, tag + "/init"));
    FoldResult fr;
    fr.fold = f;
    fr.history = TrainModel(*model, data, train, folds[f], config, DeriveSeed(config.seed, tag + "/train"));
    fr.metrics = EvaluateLabels(GoldLabels(data, folds[f]), PredictLabels(*model, data, folds[f], config));
    fold_metrics.push_back(fr.metrics);
    if (fr.history.best_val_loss < best_loss) {
      best_loss = fr.history.best_val_loss;
      result.selected_fold = f;
      result.model = std::move(model);
    }
    result.folds.push_back(std::move(fr));
  }
  result.cv = SummarizeFolds(fold_metrics);
  const auto gold = GoldLabels(data, split.test);
  result.held_out = EvaluateLabels(gold, PredictLabels(*result.model, data, split.test, config));
  result.baseline = MajorityBaseline(GoldLabels(data, split.train), gold);
  return result;
}

std::string FormatMetricTable(std::span<const ArchitectureResult> results, bool cv_means) {
  std::string out = "metric\tarchitecture";
  for (Trait t : kAllTraits) out += "\t" + std::string(TraitSymbol(t));
  out += "\tAvg\n";
  for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
    for (const auto& r : results) {
      out += std::string(MetricName(kAllMetrics[m])) + "\t" +
             std::string(nn::ArchitectureName(r.model_config.architecture));
      const auto row = cv_means ? r.cv.mean[m] : MetricRow(r.held_out, kAllMetrics[m]);
      for (double v : row) out += "\t" + io::FormatReal(v);
      out += "\n";
    }
  }
  return out;
}

std::string FormatHistory(std::span<const ArchitectureResult> results) {
  std::string out = "architecture\tfold\tepoch\ttrain_loss\tval_loss\n";
  for (const auto& r : results) {
    for (const auto& f : r.folds) {
      for (const auto& e : f.history.epochs) {
        out += std::string(nn::ArchitectureName(r.model_config.architecture)) + "\t" + std::to_string(f.fold) +
               "\t" + std::to_string(e.epoch) + "\t" + io::FormatReal(e.train_loss) + "\t" +
               io::FormatReal(e.val_loss) + "\n";
      }
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json MetricsJson(const TraitMetrics& m) {
  nlohmann::ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f_measure"] = m.f_measure;
  j["accuracy"] = m.accuracy;
  nlohmann::ordered_json undefined = nlohmann::ordered_json::array();
  if (m.precision_undefined) undefined.push_back("precision");
  if (m.recall_undefined) undefined.push_back("recall");
  if (m.f_measure_undefined) undefined.push_back("f_measure");
  j["undefined"] = undefined;
  return j;
}

nlohmann::ordered_json ReportJson(const MetricsReport& r) {
  nlohmann::ordered_json j;
  for (Trait t : kAllTraits) {
    const auto i = static_cast<std::size_t>(t);
    auto entry = MetricsJson(r.traits[i]);
    entry["tp"] = r.counts[i].tp;
    entry["tn"] = r.counts[i].tn;
    entry["fp"] = r.counts[i].fp;
    entry["fn"] = r.counts[i].fn;
    j[std::string(TraitSymbol(t))] = entry;
  }
  j["Avg"] = MetricsJson(r.average);
  return j;
}

nlohmann::ordered_json SummaryJson(const std::array<std::array<double, kTraitCount + 1>, 4>& table) {
  nlohmann::ordered_json j;
  for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
    nlohmann::ordered_json row;
    for (Trait t : kAllTraits) row[std::string(TraitSymbol(t))] = table[m][static_cast<std::size_t>(t)];
    row["Avg"] = table[m][kTraitCount];
    j[std::string(MetricName(kAllMetrics[m]))] = row;
  }
  return j;
}

}  // namespace

std::string FormatJsonReport(std::span<const ArchitectureResult> results, const TrainConfig& config,
                             const Split& split, std::span<const std::string> essay_ids) {
  nlohmann::ordered_json j;
  j["train_config"] = {{"split_ratio", config.split_ratio}, {"epochs", config.epochs},
                       {"batch_size", config.batch_size},   {"lr", config.lr},
                       {"patience", config.patience},       {"folds", config.folds},
                       {"threshold", config.threshold},     {"seed", config.seed}};
  auto ids = [&](const std::vector<std::size_t>& idx) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (auto i : idx) a.push_back(i < essay_ids.size() ? essay_ids[i] : std::to_string(i));
    return a;
  };
  j["split"] = {{"train", split.train.size()}, {"test", split.test.size()}, {"test_ids", ids(split.test)}};
  nlohmann::ordered_json archs;
  for (const auto& r : results) {
    nlohmann::ordered_json a;
    a["held_out"] = ReportJson(r.held_out);
    nlohmann::ordered_json baseline;
    for (Trait t : kAllTraits) baseline[std::string(TraitSymbol(t))] = r.baseline[static_cast<std::size_t>(t)];
    a["majority_baseline_accuracy"] = baseline;
    a["cv_mean"] = SummaryJson(r.cv.mean);
    a["cv_std"] = SummaryJson(r.cv.stddev);
    a["selected_fold"] = r.selected_fold;
    nlohmann::ordered_json folds = nlohmann::ordered_json::array();
    for (const auto& f : r.folds) {
      folds.push_back({{"fold", f.fold},
                       {"epochs_run", f.history.epochs.size()},
                       {"best_epoch", f.history.best_epoch},
                       {"best_val_loss", f.history.best_val_loss},
                       {"stopped_early", f.history.stopped_early}});
    }
    a["folds"] = folds;
    archs[std::string(nn::ArchitectureName(r.model_config.architecture))] = a;
  }
  j["architectures"] = archs;
  return j.dump(2) + "\n";
}

}  // namespace kgapp

namespace kgapp {

std::string FormatTrainingSummary(const ArchitectureResult& r) {
  nlohmann::ordered_json j;
  j["model_config"] = nn::FormatModelConfig(r.model_config);
  j["selected_fold"] = r.selected_fold;
  j["cv_mean"] = r.cv.mean;
  j["cv_std"] = r.cv.stddev;
  nlohmann::ordered_json folds = nlohmann::ordered_json::array();
  for (const auto& f : r.folds) {
    nlohmann::ordered_json e;
    e["fold"] = f.fold;
    e["best_epoch"] = f.history.best_epoch;
    e["best_val_loss"] = f.history.best_val_loss;
    e["stopped_early"] = f.history.stopped_early;
    nlohmann::ordered_json epochs = nlohmann::ordered_json::array();
    for (const auto& h : f.history.epochs) epochs.push_back({h.epoch, h.train_loss, h.val_loss});
    e["epochs"] = epochs;
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (const auto& c : f.metrics.counts) counts.push_back({c.tp, c.tn, c.fp, c.fn});
    e["counts"] = counts;
    folds.push_back(e);
  }
  j["folds"] = folds;
  return j.dump(2) + "\n";
}

ArchitectureResult ParseTrainingSummary(std::string_view text) {
  ArchitectureResult r;
  try {
    const auto j = nlohmann::json::parse(text);
    r.model_config = nn::ParseModelConfig(j.at("model_config").get<std::string>());
    r.selected_fold = j.at("selected_fold").get<std::size_t>();
    r.cv.mean = j.at("cv_mean").get<decltype(r.cv.mean)>();
    r.cv.stddev = j.at("cv_std").get<decltype(r.cv.stddev)>();
    for (const auto& e : j.at("folds")) {
      FoldResult f;
      f.fold = e.at("fold").get<std::size_t>();
      f.history.best_epoch = e.at("best_epoch").get<std::size_t>();
      f.history.best_val_loss = e.at("best_val_loss").get<double>();
      f.history.stopped_early = e.at("stopped_early").get<bool>();
      for (const auto& h : e.at("epochs")) {
        f.history.epochs.push_back({h.at(0).get<std::size_t>(), h.at(1).get<double>(), h.at(2).get<double>()});
      }
      const auto& counts = e.at("counts");
      for (std::size_t t = 0; t < kTraitCount; ++t) {
        const auto& c = counts.at(t);
        f.metrics.counts[t] = {c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>(), c.at(2).get<std::size_t>(),
                               c.at(3).get<std::size_t>()};
        f.metrics.traits[t] = ComputeMetrics(f.metrics.counts[t]);
      }
      r.folds.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("corrupt training summary: ") + e.what());
  }
  return r;
}

}  // namespace kgapp

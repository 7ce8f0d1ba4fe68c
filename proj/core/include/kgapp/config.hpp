#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kgapp/nn/model.hpp"
#include "kgapp/train_eval.hpp"

namespace kgapp {

// Everything one pipeline run needs. Loaded from a flat `key = value` file;
// relative paths resolve against the file's directory.
struct PipelineConfig {
  std::filesystem::path corpus;
  std::filesystem::path output_dir;
  std::filesystem::path cache_dir;
  std::filesystem::path stopwords;  // empty: built-in English list
  std::filesystem::path lemmas;
  std::filesystem::path gazetteer;
  std::filesystem::path ontology;  // empty: enrichment skipped
  std::filesystem::path nrc_lexicon;
  std::filesystem::path mrc_table;

  std::string endpoint = "https://dbpedia.org/sparql";
  std::string resource_base = "http://dbpedia.org/resource/";
  bool offline = false;
  double requests_per_second = 2.0;
  std::size_t build_parallelism = 1;
  bool capitalized_entities = false;

  int walk_depth = 5;
  int walks_per_entity = 5;
  std::size_t walk_threads = 1;

  int embed_dim = 500;
  int embed_window = 5;
  int embed_negatives = 5;
  int embed_epochs = 5;
  double embed_lr = 0.025;
  std::size_t vocab_size = 10000;

  std::vector<nn::Architecture> architectures{std::begin(nn::kAllArchitectures),
                                              std::end(nn::kAllArchitectures)};
  nn::ModelConfig model;  // architecture and input_dim are filled per run
  TrainConfig train;
  std::uint64_t seed = 42;

  void Validate() const;
};

PipelineConfig ParseConfig(std::string_view text, const std::filesystem::path& base_dir);
PipelineConfig LoadConfig(const std::filesystem::path& path);

// "cnn,lstm" or "all".
std::vector<nn::Architecture> ParseArchitectureList(std::string_view text);

}  // namespace kgapp

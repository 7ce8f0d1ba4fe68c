#include "kgapp/config.hpp"

#include <charconv>
#include <functional>
#include <map>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"

namespace kgapp {

namespace {

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T out{};
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size()) {
    throw ConfigError("bad value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(value), &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad value '" + std::string(value) + "' for " + std::string(key));
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad boolean '" + std::string(value) + "' for " + std::string(key));
}

}  // namespace

std::vector<nn::Architecture> ParseArchitectureList(std::string_view text) {
  text = io::Trim(text);
  if (text == "all") return {std::begin(nn::kAllArchitectures), std::end(nn::kAllArchitectures)};
  std::vector<nn::Architecture> out;
  for (auto part : io::Split(text, ',')) {
    const auto a = nn::ParseArchitecture(io::Trim(part));
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw ConfigError("no architecture selected");
  return out;
}

void PipelineConfig::Validate() const {
  if (corpus.empty()) throw ConfigError("config: corpus is required");
  if (output_dir.empty()) throw ConfigError("config: output_dir is required");
  if (cache_dir.empty()) throw ConfigError("config: cache_dir is required");
  if (walk_depth < 1) throw ConfigError("config: walk_depth must be at least 1");
  if (walks_per_entity < 1) throw ConfigError("config: walks_per_entity must be at least 1");
  if (embed_dim < 1) throw ConfigError("config: embed_dim must be at least 1");
  if (embed_window < 1) throw ConfigError("config: embed_window must be at least 1");
  if (embed_negatives < 1) throw ConfigError("config: embed_negatives must be at least 1");
  if (embed_epochs < 1) throw ConfigError("config: embed_epochs must be at least 1");
  if (!(embed_lr > 0.0)) throw ConfigError("config: embed_lr must be positive");
  if (vocab_size < 1) throw ConfigError("config: vocab_size must be at least 1");
  if (architectures.empty()) throw ConfigError("config: no architecture selected");
  if (build_parallelism < 1) throw ConfigError("config: build_parallelism must be at least 1");
  if (!(requests_per_second > 0.0)) throw ConfigError("config: requests_per_second must be positive");
  train.Validate();
  nn::ModelConfig m = model;
  m.input_dim = static_cast<std::size_t>(embed_dim);
  for (auto a : architectures) {
    m.architecture = a;
    m.Validate();
  }
}

PipelineConfig ParseConfig(std::string_view text, const std::filesystem::path& base_dir) {
  PipelineConfig c;
  auto path = [&](std::filesystem::path& dst) {
    return [&dst, &base_dir](std::string_view, std::string_view v) {
      std::filesystem::path p{std::string(v)};
      dst = p.is_absolute() ? p : (base_dir / p).lexically_normal();
    };
  };
  auto integer = [](int& dst) {
    return [&dst](std::string_view k, std::string_view v) { dst = ParseNumber<int>(k, v); };
  };
  auto size = [](std::size_t& dst) {
    return [&dst](std::string_view k, std::string_view v) { dst = ParseNumber<std::size_t>(k, v); };
  };
  auto real = [](double& dst) {
    return [&dst](std::string_view k, std::string_view v) { dst = ParseDouble(k, v); };
  };
  auto flag = [](bool& dst) {
    return [&dst](std::string_view k, std::string_view v) { dst = ParseBool(k, v); };
  };
  auto string = [](std::string& dst) { return [&dst](std::string_view, std::string_view v) { dst = v; }; };

  const std::map<std::string, std::function<void(std::string_view, std::string_view)>, std::less<>> setters = {
      {"corpus", path(c.corpus)},
      {"output_dir", path(c.output_dir)},
      {"cache_dir", path(c.cache_dir)},
      {"stopwords", path(c.stopwords)},
      {"lemmas", path(c.lemmas)},
      {"gazetteer", path(c.gazetteer)},
      {"ontology", path(c.ontology)},
      {"nrc_lexicon", path(c.nrc_lexicon)},
      {"mrc_table", path(c.mrc_table)},
      {"endpoint", string(c.endpoint)},
      {"resource_base", string(c.resource_base)},
      {"offline", flag(c.offline)},
      {"requests_per_second", real(c.requests_per_second)},
      {"build_parallelism", size(c.build_parallelism)},
      {"capitalized_entities", flag(c.capitalized_entities)},
      {"walk_depth", integer(c.walk_depth)},
      {"walks_per_entity", integer(c.walks_per_entity)},
      {"walk_threads", size(c.walk_threads)},
      {"embed_dim", integer(c.embed_dim)},
      {"embed_window", integer(c.embed_window)},
      {"embed_negatives", integer(c.embed_negatives)},
      {"embed_epochs", integer(c.embed_epochs)},
      {"embed_lr", real(c.embed_lr)},
      {"vocab_size", size(c.vocab_size)},
      {"architectures",
       [&c](std::string_view, std::string_view v) { c.architectures = ParseArchitectureList(v); }},
      {"stack_depth", size(c.model.stack_depth)},
      {"filters", size(c.model.filters)},
      {"kernel", size(c.model.kernel)},
      {"hidden_units", size(c.model.hidden_units)},
      {"dropout_rate", real(c.model.dropout_rate)},
      {"dense_hidden", size(c.model.dense_hidden)},
      {"split_ratio", real(c.train.split_ratio)},
      {"epochs", size(c.train.epochs)},
      {"batch_size", size(c.train.batch_size)},
      {"lr", real(c.train.lr)},
      {"patience", size(c.train.patience)},
      {"folds", size(c.train.folds)},
      {"threshold", real(c.train.threshold)},
      {"seed", [&c](std::string_view k, std::string_view v) { c.seed = ParseNumber<std::uint64_t>(k, v); }},
  };

  std::size_t line_no = 0;
  for (auto raw : io::Split(text, '\n')) {
    ++line_no;
    auto line = io::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", ParseError::Unit::kLine, line_no);
    const auto key = io::Trim(line.substr(0, eq));
    const auto value = io::Trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw ParseError("unknown config key '" + std::string(key) + "'", ParseError::Unit::kLine, line_no);
    }
    try {
      it->second(key, value);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), ParseError::Unit::kLine, line_no);
    }
  }
  c.train.seed = c.seed;
  return c;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  const auto base = std::filesystem::absolute(path).parent_path();
  return ParseConfig(io::ReadFile(path), base);
}

}  // namespace kgapp

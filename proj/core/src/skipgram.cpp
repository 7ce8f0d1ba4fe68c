#include "kgapp/skipgram.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"

namespace kgapp {

EmbeddingTable::EmbeddingTable(std::vector<std::string> vocab, std::size_t dim,
                               std::vector<float> vectors)
    : vocab_(std::move(vocab)), dim_(dim), vectors_(std::move(vectors)) {
  if (dim_ == 0) throw DomainError("embedding dimension must be positive");
  if (vectors_.size() != vocab_.size() * dim_) throw ShapeError("embedding table size mismatch");
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (!index_.emplace(vocab_[i], i).second) {
      throw DomainError("duplicate token in embedding vocabulary: " + vocab_[i]);
    }
  }
  for (float v : vectors_) {
    if (!std::isfinite(v)) throw DomainError("non-finite value in embedding table");
  }
}

std::span<const float> EmbeddingTable::Vector(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return {};
  return Row(it->second);
}

std::span<const float> EmbeddingTable::Row(std::size_t index) const {
  return std::span<const float>(vectors_).subspan(index * dim_, dim_);
}

std::string EmbeddingTable::Format() const {
  std::string out = std::to_string(vocab_.size()) + " " + std::to_string(dim_) + "\n";
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    out += EscapeToken(vocab_[i]);
    for (float v : Row(i)) {
      out.push_back(' ');
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out.append(buf, end);
    }
    out.push_back('\n');
  }
  return out;
}

EmbeddingTable EmbeddingTable::Parse(std::string_view text) {
  auto lines = io::Split(text, '\n');
  if (lines.empty()) throw ParseError("missing header", ParseError::Unit::kLine, 1);
  auto header = io::Split(io::Trim(lines[0]), ' ');
  std::size_t count = 0, dim = 0;
  if (header.size() != 2 ||
      std::from_chars(header[0].data(), header[0].data() + header[0].size(), count).ec != std::errc{} ||
      std::from_chars(header[1].data(), header[1].data() + header[1].size(), dim).ec != std::errc{}) {
    throw ParseError("header must be 'count dim'", ParseError::Unit::kLine, 1);
  }
  std::vector<std::string> vocab;
  std::vector<float> vectors;
  vocab.reserve(count);
  vectors.reserve(count * dim);
  for (std::size_t i = 1; i < lines.size() && vocab.size() < count; ++i) {
    auto line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto cols = io::Split(line, ' ');
    if (cols.size() != dim + 1) {
      throw ParseError("expected token and " + std::to_string(dim) + " values",
                       ParseError::Unit::kLine, i + 1);
    }
    vocab.push_back(UnescapeToken(cols[0]));
    for (std::size_t d = 1; d <= dim; ++d) {
      float v = 0;
      auto [end, ec] = std::from_chars(cols[d].data(), cols[d].data() + cols[d].size(), v);
      if (ec != std::errc{} || end != cols[d].data() + cols[d].size()) {
        throw ParseError("bad vector component", ParseError::Unit::kLine, i + 1);
      }
      vectors.push_back(v);
    }
  }
  if (vocab.size() != count) throw ParseError("truncated embedding table", ParseError::Unit::kLine, lines.size());
  return EmbeddingTable(std::move(vocab), dim, std::move(vectors));
}

SgnsModel::SgnsModel(std::vector<std::string> vocab, std::vector<std::uint64_t> counts, int dim,
                     double sampling_power, std::uint64_t seed)
    : vocab_(std::move(vocab)), dim_(dim) {
  if (dim_ < 1) throw DomainError("embedding dimension must be >= 1");
  if (vocab_.size() < 2) throw DomainError("negative sampling needs a vocabulary of at least 2 tokens");
  if (counts.size() != vocab_.size()) throw ShapeError("counts and vocabulary differ in length");
  const std::size_t n = vocab_.size() * static_cast<std::size_t>(dim_);
  input_.resize(n);
  output_.assign(n, 0.0f);
  scratch_.resize(static_cast<std::size_t>(dim_));
  Rng rng(seed);
  for (auto& v : input_) v = static_cast<float>((UniformReal(rng) - 0.5) / dim_);
  cumulative_.resize(counts.size());
  double total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    total += std::pow(static_cast<double>(counts[i]), sampling_power);
    cumulative_[i] = total;
  }
  for (auto& c : cumulative_) c /= total;
}

std::span<const float> SgnsModel::InputVector(std::size_t i) const {
  return std::span<const float>(input_).subspan(i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
}

std::span<const float> SgnsModel::OutputVector(std::size_t i) const {
  return std::span<const float>(output_).subspan(i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
}

std::size_t SgnsModel::SampleNegative(Rng& rng) const {
  const double u = UniformReal(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

double SgnsModel::Loss(std::size_t center, std::size_t context,
                       std::span<const std::size_t> negatives) const {
  std::vector<std::span<const float>> negs;
  negs.reserve(negatives.size());
  for (auto k : negatives) negs.push_back(OutputVector(k));
  return SgnsPairLoss<float>(InputVector(center), OutputVector(context), negs);
}

double SgnsModel::Update(std::size_t center, std::size_t context,
                         std::span<const std::size_t> negatives, double lr) {
  const std::size_t d = static_cast<std::size_t>(dim_);
  float* in = input_.data() + center * d;
  std::fill(scratch_.begin(), scratch_.end(), 0.0f);
  double loss = 0;
  auto step = [&](std::size_t target, double label) {
    float* out = output_.data() + target * d;
    double f = 0;
    for (std::size_t i = 0; i < d; ++i) f += static_cast<double>(in[i]) * out[i];
    const double s = Sigmoid(f);
    loss -= std::log(label > 0 ? s : 1.0 - s);
    const auto g = static_cast<float>((label - s) * lr);
    for (std::size_t i = 0; i < d; ++i) scratch_[i] += g * out[i];
    for (std::size_t i = 0; i < d; ++i) out[i] += g * in[i];
  };
  step(context, 1.0);
  for (auto k : negatives) step(k, 0.0);
  for (std::size_t i = 0; i < d; ++i) in[i] += scratch_[i];
  return loss;
}

EmbeddingTable SgnsModel::ToTable() const { return EmbeddingTable(vocab_, static_cast<std::size_t>(dim_), input_); }

EmbeddingTable TrainSkipGram(const std::vector<Walk>& walks, const SkipGramOptions& options,
                             SkipGramStats* stats) {
  if (walks.empty()) throw DomainError("empty walk corpus");
  if (options.dim < 1) throw DomainError("embedding dimension must be >= 1");
  if (options.window < 1 || options.negatives < 0 || options.epochs < 1) {
    throw DomainError("window >= 1, negatives >= 0 and epochs >= 1 required");
  }

  std::map<std::string, std::uint64_t> freq;
  std::uint64_t corpus_tokens = 0;
  for (const auto& w : walks) {
    for (const auto& t : w.tokens) {
      ++freq[t];
      ++corpus_tokens;
    }
  }
  std::vector<std::pair<std::string, std::uint64_t>> sorted(freq.begin(), freq.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> vocab;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::string, std::size_t> index;
  for (auto& [token, count] : sorted) {
    index.emplace(token, vocab.size());
    vocab.push_back(token);
    counts.push_back(count);
  }

  SgnsModel model(vocab, counts, options.dim, options.sampling_power, options.seed);
  Rng rng(DeriveSeed(options.seed, "negatives"));

  std::vector<std::vector<std::size_t>> encoded;
  encoded.reserve(walks.size());
  for (const auto& w : walks) {
    std::vector<std::size_t> ids;
    ids.reserve(w.tokens.size());
    for (const auto& t : w.tokens) ids.push_back(index.at(t));
    encoded.push_back(std::move(ids));
  }

  const double total = static_cast<double>(corpus_tokens) * options.epochs;
  double processed = 0;
  std::vector<std::size_t> negs;
  SkipGramStats local;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    double epoch_loss = 0;
    std::uint64_t epoch_pairs = 0;
    for (const auto& seq : encoded) {
      for (std::size_t pos = 0; pos < seq.size(); ++pos) {
        const double lr = options.lr * std::max(1e-4, 1.0 - processed / total);
        processed += 1;
        const std::size_t lo = pos >= static_cast<std::size_t>(options.window) ? pos - options.window : 0;
        const std::size_t hi = std::min(seq.size() - 1, pos + options.window);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          negs.clear();
          for (int k = 0; k < options.negatives; ++k) {
            std::size_t n = model.SampleNegative(rng);
            if (n == seq[c]) continue;
            negs.push_back(n);
          }
          epoch_loss += model.Update(seq[pos], seq[c], negs, lr);
          ++epoch_pairs;
        }
      }
    }
    local.pairs += epoch_pairs;
    const double mean = epoch_pairs ? epoch_loss / static_cast<double>(epoch_pairs) : 0.0;
    if (epoch == 0) local.mean_loss_first_epoch = mean;
    local.mean_loss_last_epoch = mean;
  }
  if (stats != nullptr) *stats = local;
  return model.ToTable();
}

double CosineSimilarity(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw ShapeError("cosine of vectors with different lengths");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace kgapp

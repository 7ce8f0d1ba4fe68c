#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kgapp/graph.hpp"
#include "kgapp/skipgram.hpp"

namespace kgapp {

// Occurrences of each IRI vertex as subject or object, summed over graphs.
// Literals are not concepts and predicates are labels, so neither counts.
std::map<std::string, std::uint64_t> CountVertexOccurrences(
    const std::vector<const KnowledgeGraph*>& graphs);

// Top `k` tokens by count, ties broken lexicographically; ordered by
// (count desc, token asc). Returns everything, with a warning, when fewer
// than `k` distinct tokens exist.
std::vector<std::string> SelectVocabulary(const std::map<std::string, std::uint64_t>& counts,
                                          std::size_t k, std::vector<std::string>* warnings = nullptr);

// Per-essay K x D classifier input; row i is the vector of vocab[i] when
// that token is a vertex of the essay graph, else zeros.
struct EmbeddingMatrix {
  std::string essay_id;
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<float> data;  // row-major
  std::vector<bool> presence;

  std::span<const float> Row(std::size_t i) const {
    return std::span<const float>(data).subspan(i * dim, dim);
  }
  std::size_t present_rows() const;

  // Binary container: "KGEMBMX1", u32 id length, id bytes, u32 K, u32 D,
  // presence bitmap (ceil(K/8) bytes, bit i of byte i/8 is row i), then
  // K*D little-endian float32.
  std::string Serialize() const;
  static EmbeddingMatrix Deserialize(std::string_view bytes);

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;
};

EmbeddingMatrix AssembleMatrix(const std::string& essay_id, const KnowledgeGraph& essay_graph,
                               const EmbeddingTable& table, const std::vector<std::string>& vocab);

}  // namespace kgapp

#include "kgapp/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <unordered_set>

#include "kgapp/error.hpp"

namespace kgapp {

namespace {

constexpr std::string_view kMatrixMagic = "KGEMBMX1";

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t GetU32(std::string_view bytes, std::size_t& pos) {
  if (pos + 4 > bytes.size()) throw ParseError("truncated matrix", ParseError::Unit::kByte, pos);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
  pos += 4;
  return v;
}

}  // namespace

std::map<std::string, std::uint64_t> CountVertexOccurrences(
    const std::vector<const KnowledgeGraph*>& graphs) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto* g : graphs) {
    for (const auto& t : g->triples()) {
      ++counts[t.subject.value];
      if (t.object.is_iri()) ++counts[t.object.value];
    }
  }
  return counts;
}

std::vector<std::string> SelectVocabulary(const std::map<std::string, std::uint64_t>& counts,
                                          std::size_t k, std::vector<std::string>* warnings) {
  if (k < 1) throw DomainError("vocabulary size must be >= 1");
  std::vector<std::pair<std::string, std::uint64_t>> items(counts.begin(), counts.end());
  auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (items.size() > k) {
    std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(k), items.end(), by_rank);
    items.resize(k);
  } else {
    std::sort(items.begin(), items.end(), by_rank);
    if (items.size() < k && warnings != nullptr) {
      warnings->push_back("only " + std::to_string(items.size()) + " distinct concepts available, " +
                          std::to_string(k) + " requested");
    }
  }
  std::vector<std::string> vocab;
  vocab.reserve(items.size());
  for (auto& [token, count] : items) vocab.push_back(std::move(token));
  return vocab;
}

std::size_t EmbeddingMatrix::present_rows() const {
  return static_cast<std::size_t>(std::count(presence.begin(), presence.end(), true));
}

EmbeddingMatrix AssembleMatrix(const std::string& essay_id, const KnowledgeGraph& essay_graph,
                               const EmbeddingTable& table, const std::vector<std::string>& vocab) {
  std::unordered_set<std::string> vertices;
  for (const auto& v : essay_graph.Vertices()) {
    if (v.is_iri()) vertices.insert(v.value);
  }
  EmbeddingMatrix m;
  m.essay_id = essay_id;
  m.rows = vocab.size();
  m.dim = table.dim();
  m.data.assign(m.rows * m.dim, 0.0f);
  m.presence.assign(m.rows, false);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (!vertices.contains(vocab[i])) continue;
    auto vec = table.Vector(vocab[i]);
    if (vec.empty()) continue;
    std::copy(vec.begin(), vec.end(), m.data.begin() + static_cast<std::ptrdiff_t>(i * m.dim));
    m.presence[i] = true;
  }
  return m;
}

std::string EmbeddingMatrix::Serialize() const {
  if (data.size() != rows * dim || presence.size() != rows) throw ShapeError("inconsistent matrix");
  std::string out(kMatrixMagic);
  PutU32(out, static_cast<std::uint32_t>(essay_id.size()));
  out += essay_id;
  PutU32(out, static_cast<std::uint32_t>(rows));
  PutU32(out, static_cast<std::uint32_t>(dim));
  std::string bitmap((rows + 7) / 8, '\0');
  for (std::size_t i = 0; i < rows; ++i) {
    if (presence[i]) bitmap[i / 8] = static_cast<char>(bitmap[i / 8] | (1 << (i % 8)));
  }
  out += bitmap;
  for (float v : data) PutU32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

EmbeddingMatrix EmbeddingMatrix::Deserialize(std::string_view bytes) {
  if (bytes.substr(0, kMatrixMagic.size()) != kMatrixMagic) {
    throw ParseError("bad magic", ParseError::Unit::kByte, 0);
  }
  std::size_t pos = kMatrixMagic.size();
  EmbeddingMatrix m;
  const std::uint32_t id_len = GetU32(bytes, pos);
  if (pos + id_len > bytes.size()) throw ParseError("truncated id", ParseError::Unit::kByte, pos);
  m.essay_id = std::string(bytes.substr(pos, id_len));
  pos += id_len;
  m.rows = GetU32(bytes, pos);
  m.dim = GetU32(bytes, pos);
  const std::size_t bitmap_len = (m.rows + 7) / 8;
  if (pos + bitmap_len + m.rows * m.dim * 4 != bytes.size()) {
    throw ParseError("payload size does not match header", ParseError::Unit::kByte, pos);
  }
  m.presence.resize(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    m.presence[i] = (static_cast<unsigned char>(bytes[pos + i / 8]) >> (i % 8)) & 1u;
  }
  pos += bitmap_len;
  m.data.resize(m.rows * m.dim);
  for (auto& v : m.data) v = std::bit_cast<float>(GetU32(bytes, pos));
  return m;
}

}  // namespace kgapp

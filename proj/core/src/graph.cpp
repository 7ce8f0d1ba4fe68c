#include "kgapp/graph.hpp"

#include <algorithm>

#include "kgapp/error.hpp"

namespace kgapp {

KnowledgeGraph::KnowledgeGraph(const std::vector<Triple>& triples) { InsertAll(triples); }

bool KnowledgeGraph::Insert(const Triple& triple) {
  if (!triple.subject.is_iri() || !triple.predicate.is_iri()) {
    throw DomainError("triple subject and predicate must be IRIs");
  }
  if (!triples_.insert(triple).second) return false;
  auto& edges = adjacency_[triple.subject.value];
  Edge edge{triple.predicate, triple.object};
  edges.insert(std::lower_bound(edges.begin(), edges.end(), edge), std::move(edge));
  return true;
}

std::size_t KnowledgeGraph::InsertAll(const std::vector<Triple>& triples) {
  std::size_t added = 0;
  for (const auto& t : triples) added += Insert(t);
  return added;
}

std::size_t KnowledgeGraph::Merge(const KnowledgeGraph& other) {
  std::size_t added = 0;
  for (const auto& t : other.triples_) added += Insert(t);
  return added;
}

std::span<const Edge> KnowledgeGraph::OutEdges(const std::string& subject_iri) const {
  auto it = adjacency_.find(subject_iri);
  if (it == adjacency_.end()) return {};
  return it->second;
}

std::set<Term> KnowledgeGraph::Vertices() const {
  std::set<Term> vertices;
  for (const auto& t : triples_) {
    vertices.insert(t.subject);
    vertices.insert(t.object);
  }
  return vertices;
}

std::set<std::string> KnowledgeGraph::Labels() const {
  std::set<std::string> labels;
  for (const auto& t : triples_) labels.insert(t.predicate.value);
  return labels;
}

std::string KnowledgeGraph::Serialize() const { return SerializeNTriples(TripleList()); }

std::string VertexToken(const Term& vertex) { return vertex.value; }

}  // namespace kgapp

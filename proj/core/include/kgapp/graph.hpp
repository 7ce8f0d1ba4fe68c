#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "kgapp/rdf.hpp"

namespace kgapp {

struct Edge {
  Term predicate;
  Term object;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed labeled multigraph over RDF terms. Exact duplicate triples are
// stored once; distinct predicates between the same vertex pair are kept.
// Adjacency lists are kept sorted so traversal order depends only on the
// triple set, never on insertion order.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(const std::vector<Triple>& triples);

  // Returns true if the triple was not already present.
  bool Insert(const Triple& triple);
  std::size_t InsertAll(const std::vector<Triple>& triples);
  std::size_t Merge(const KnowledgeGraph& other);

  bool Contains(const Triple& triple) const { return triples_.contains(triple); }
  bool empty() const noexcept { return triples_.empty(); }
  std::size_t size() const noexcept { return triples_.size(); }

  const std::set<Triple>& triples() const noexcept { return triples_; }
  std::vector<Triple> TripleList() const { return {triples_.begin(), triples_.end()}; }

  // Outgoing edges of an IRI subject; empty for literals and sinks.
  std::span<const Edge> OutEdges(const std::string& subject_iri) const;
  const std::map<std::string, std::vector<Edge>>& adjacency() const noexcept { return adjacency_; }

  // Subjects and objects.
  std::set<Term> Vertices() const;
  // Predicate IRIs.
  std::set<std::string> Labels() const;

  std::string Serialize() const;

  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
    return a.triples_ == b.triples_;
  }

 private:
  std::set<Triple> triples_;
  std::map<std::string, std::vector<Edge>> adjacency_;
};

// Walk/vocabulary token for a vertex: the IRI, or a literal's lexical form.
std::string VertexToken(const Term& vertex);

}  // namespace kgapp

#include "kgapp/kg_enrich.hpp"

#include "kgapp/io.hpp"
#include "kgapp/unicode.hpp"

namespace kgapp {

std::string LexiconKey(const std::string& concept_key) {
  std::string key = unicode::ToLower(concept_key);
  for (char& c : key) {
    if (c == '_') c = ' ';
  }
  return key;
}

KnowledgeGraph EnrichOntology(const KnowledgeGraph& graph, const ConceptSet& concepts,
                              const OntologySource& ontology, const EnrichNamespaces& ns) {
  KnowledgeGraph out = graph;
  const Term type = Term::Iri(std::string(vocab::kRdfType));
  for (const auto& key : concepts.concepts) {
    const std::string cls = ns.ontology + key;
    if (!ontology.HasClass(cls)) continue;
    out.Insert(Triple{Term::Iri(ns.resource + key), type, Term::Iri(cls)});
    out.InsertAll(ontology.SuperclassChain(cls));
  }
  return out;
}

KnowledgeGraph EnrichNrc(const KnowledgeGraph& graph, const ConceptSet& concepts,
                         const EmotionLexicon& lexicon, const EnrichNamespaces& ns) {
  KnowledgeGraph out = graph;
  for (const auto& key : concepts.concepts) {
    const auto* emotions = lexicon.Find(LexiconKey(key));
    if (emotions == nullptr) continue;
    const Term subject = Term::Iri(ns.resource + key);
    for (const auto& [emotion, score] : *emotions) {
      out.Insert(Triple{subject, Term::Iri(ns.nrc + emotion), Term::Real(score)});
    }
  }
  return out;
}

KnowledgeGraph EnrichMrc(const KnowledgeGraph& graph, const ConceptSet& concepts,
                         const PsycholinguisticTable& table, const EnrichNamespaces& ns) {
  KnowledgeGraph out = graph;
  for (const auto& key : concepts.concepts) {
    const auto* attributes = table.Find(LexiconKey(key));
    if (attributes == nullptr) continue;
    const Term subject = Term::Iri(ns.resource + key);
    for (const auto& [name, value] : *attributes) {
      Term object = std::holds_alternative<double>(value)
                        ? Term::Real(std::get<double>(value))
                        : Term::Literal(std::get<std::string>(value));
      out.Insert(Triple{subject, Term::Iri(ns.mrc + name), std::move(object)});
    }
  }
  return out;
}

}  // namespace kgapp

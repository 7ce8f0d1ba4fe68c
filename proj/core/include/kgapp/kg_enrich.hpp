#pragma once

#include <string>

#include "kgapp/graph.hpp"
#include "kgapp/lexicons.hpp"
#include "kgapp/preprocess.hpp"

namespace kgapp {

// Property IRIs minted for lexicon literals: `<nrc><emotion>` and
// `<mrc><attribute>`. Walk tokens depend on them, so they are fixed.
struct EnrichNamespaces {
  std::string resource = std::string(vocab::kDbpediaResource);
  std::string ontology = std::string(vocab::kDbpediaOntology);
  std::string nrc = "http://kgapp.org/nrc#";
  std::string mrc = "http://kgapp.org/mrc#";
};

// Lexicon lookup key: lowercase, underscores back to spaces.
std::string LexiconKey(const std::string& concept_key);

// Adds `concept rdf:type ontology:Key` plus the full superclass chain for
// every concept whose key names an ontology class.
KnowledgeGraph EnrichOntology(const KnowledgeGraph& graph, const ConceptSet& concepts,
                              const OntologySource& ontology, const EnrichNamespaces& ns = {});

// One xsd:double literal per emotion present for the concept's word.
KnowledgeGraph EnrichNrc(const KnowledgeGraph& graph, const ConceptSet& concepts,
                         const EmotionLexicon& lexicon, const EnrichNamespaces& ns = {});

// One literal per attribute present for the concept's word.
KnowledgeGraph EnrichMrc(const KnowledgeGraph& graph, const ConceptSet& concepts,
                         const PsycholinguisticTable& table, const EnrichNamespaces& ns = {});

}  // namespace kgapp

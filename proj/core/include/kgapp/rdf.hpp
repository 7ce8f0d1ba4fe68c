#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace kgapp {

namespace vocab {
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kDboRedirects = "http://dbpedia.org/ontology/wikiPageRedirects";
inline constexpr std::string_view kDbpediaResource = "http://dbpedia.org/resource/";
inline constexpr std::string_view kDbpediaOntology = "http://dbpedia.org/ontology/";
// Skolem prefix for renamed blank nodes.
inline constexpr std::string_view kBlankNodePrefix = "urn:kgapp:bnode:";
}  // namespace vocab

struct Term {
  enum class Kind : unsigned char { kIri = 0, kLiteral = 1 };

  Kind kind = Kind::kIri;
  std::string value;
  // Literals only; at most one of the two is non-empty.
  std::string datatype;
  std::string lang;

  static Term Iri(std::string iri);
  static Term Literal(std::string lexical, std::string datatype = {}, std::string lang = {});
  static Term Real(double value);

  bool is_iri() const noexcept { return kind == Kind::kIri; }
  bool is_literal() const noexcept { return kind == Kind::kLiteral; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// `<iri>` or `"lexical"^^<dt>` / `"lexical"@lang` with N-Triples escaping.
std::string FormatTerm(const Term& term);
std::string FormatTriple(const Triple& triple);

// N-Triples document, one line per triple, lines sorted bytewise.
std::string SerializeNTriples(const std::vector<Triple>& triples);

bool IsAbsoluteIri(std::string_view iri);

}  // namespace kgapp

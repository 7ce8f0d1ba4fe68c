#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kgapp/rdf.hpp"

namespace kgapp {

class ConceptResolver;

inline constexpr std::array<std::string_view, 8> kEmotionNames = {
    "anger", "anticipation", "disgust", "fear", "joy", "sadness", "surprise", "trust"};

bool IsEmotionName(std::string_view name);

// word -> emotion -> intensity in [0, 1]
struct EmotionLexicon {
  std::map<std::string, std::map<std::string, double>> entries;

  const std::map<std::string, double>* Find(const std::string& word) const;
};

// `word<TAB>emotion<TAB>score` lines; `#` comments and an optional header
// row are skipped.
EmotionLexicon ParseNrcLexicon(std::string_view text);
EmotionLexicon LoadNrcLexicon(const std::filesystem::path& path);

struct MrcAttribute {
  enum class Type { kNumeric, kString };
  std::string name;
  Type type = Type::kNumeric;
};

class MrcSchema {
 public:
  MrcSchema() = default;
  explicit MrcSchema(std::vector<MrcAttribute> attributes);

  // The 26 fields of the MRC psycholinguistic database.
  static MrcSchema Default();

  const MrcAttribute* Find(std::string_view name) const;
  const std::vector<MrcAttribute>& attributes() const noexcept { return attributes_; }

 private:
  std::vector<MrcAttribute> attributes_;
};

using MrcValue = std::variant<double, std::string>;

struct PsycholinguisticTable {
  std::map<std::string, std::map<std::string, MrcValue>> entries;

  const std::map<std::string, MrcValue>* Find(const std::string& word) const;
};

// `word<TAB>attribute<TAB>value` lines.
PsycholinguisticTable ParseMrcTable(std::string_view text, const MrcSchema& schema);
PsycholinguisticTable LoadMrcTable(const std::filesystem::path& path, const MrcSchema& schema);

// Class hierarchy of an ontology (rdfs:subClassOf edges and class
// declarations). The hierarchy is checked to be acyclic on construction.
class OntologySource {
 public:
  OntologySource() = default;
  explicit OntologySource(std::vector<Triple> triples);

  static OntologySource Load(const std::filesystem::path& path);
  // Looks up `namespace + name` for each name through the resolver (whose
  // base IRI is the ontology namespace), following superclasses.
  static OntologySource FromResolver(ConceptResolver& resolver,
                                     const std::vector<std::string>& class_names);

  bool HasClass(const std::string& class_iri) const;
  const std::vector<std::string>& Parents(const std::string& class_iri) const;
  // subClassOf triples reachable from `class_iri`, in sorted order.
  std::vector<Triple> SuperclassChain(const std::string& class_iri) const;
  const std::vector<Triple>& triples() const noexcept { return triples_; }

 private:
  void Index();

  std::vector<Triple> triples_;
  std::map<std::string, std::vector<std::string>> parents_;
};

}  // namespace kgapp

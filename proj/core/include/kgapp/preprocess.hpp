#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kgapp/corpus.hpp"

namespace kgapp {

// Byte offsets into the (NFC-normalized) UTF-8 source; surface == source[start, end).
struct Token {
  std::string surface;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct ConceptSet {
  std::string essay_id;
  // Insertion order is first occurrence in the essay.
  std::vector<std::string> concepts;
};

using StopwordSet = std::unordered_set<std::string>;
using LemmaTable = std::unordered_map<std::string, std::string>;

class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(const std::vector<std::string>& names);

  void Add(std::string_view name);
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t max_words() const noexcept { return max_words_; }
  bool Contains(const std::vector<std::string>& lowercase_words) const;

 private:
  std::set<std::vector<std::string>> entries_;
  std::size_t max_words_ = 0;
};

// Word runs and single punctuation characters; whitespace is dropped.
std::vector<Token> Tokenize(std::string_view text);

bool IsPunctuationToken(std::string_view surface);

std::vector<Token> RemoveNoise(const std::vector<Token>& tokens, const StopwordSet& stopwords);

std::vector<Token> Normalize(const std::vector<Token>& tokens, const LemmaTable& lemmas);

struct EntityOptions {
  // Also treat runs of two or more capitalized words as entities.
  bool capitalized_spans = false;
};

// Longest-match-first, left-to-right, non-overlapping gazetteer matches.
// Matching is case-insensitive; the entity surface is the source slice.
std::vector<Token> RecognizeEntities(std::string_view text, const Gazetteer& gazetteer,
                                     const EntityOptions& options = {});

// First code point uppercased, spaces replaced by underscores.
std::string CanonicalizeKey(std::string_view surface);

// Pluggable backend for the phase-1 chain. The default implementation uses
// the in-repo tokenizer, stopword filter, dictionary lemmatizer and
// gazetteer NER.
class TextAnalyzer {
 public:
  virtual ~TextAnalyzer() = default;
  virtual ConceptSet BuildConceptSet(const EssayRecord& essay) const = 0;
};

struct PreprocessResources {
  StopwordSet stopwords;
  LemmaTable lemmas;
  Gazetteer gazetteer;
  EntityOptions entity_options;
};

class DefaultAnalyzer final : public TextAnalyzer {
 public:
  explicit DefaultAnalyzer(PreprocessResources resources) : resources_(std::move(resources)) {}
  ConceptSet BuildConceptSet(const EssayRecord& essay) const override;
  const PreprocessResources& resources() const noexcept { return resources_; }

 private:
  PreprocessResources resources_;
};

ConceptSet BuildConceptSet(const EssayRecord& essay, const StopwordSet& stopwords,
                           const LemmaTable& lemmas, const Gazetteer& gazetteer,
                           const EntityOptions& options = {});

// Space-joined keys with underscores turned back into spaces.
std::string Detokenize(const ConceptSet& concepts);

StopwordSet LoadStopwords(const std::filesystem::path& path);
StopwordSet DefaultStopwords();
LemmaTable LoadLemmaTable(const std::filesystem::path& path);
Gazetteer LoadGazetteer(const std::filesystem::path& path);

}  // namespace kgapp

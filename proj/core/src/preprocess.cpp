#include "kgapp/preprocess.hpp"

#include <algorithm>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/unicode.hpp"

namespace kgapp {

namespace {

std::vector<std::string> LowercaseWords(std::string_view text) {
  std::vector<std::string> words;
  for (const auto& tok : Tokenize(text)) words.push_back(unicode::ToLower(tok.surface));
  return words;
}

}  // namespace

Gazetteer::Gazetteer(const std::vector<std::string>& names) {
  for (const auto& name : names) Add(name);
}

void Gazetteer::Add(std::string_view name) {
  auto words = LowercaseWords(name);
  if (words.empty()) return;
  max_words_ = std::max(max_words_, words.size());
  entries_.insert(std::move(words));
}

bool Gazetteer::Contains(const std::vector<std::string>& lowercase_words) const {
  return entries_.contains(lowercase_words);
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::size_t word_start = std::string_view::npos;
  auto close_word = [&](std::size_t end) {
    if (word_start != std::string_view::npos) {
      tokens.push_back({std::string(text.substr(word_start, end - word_start)), word_start, end});
      word_start = std::string_view::npos;
    }
  };
  while (pos < text.size()) {
    const std::size_t at = pos;
    const char32_t cp = unicode::DecodeNext(text, pos);
    switch (unicode::Classify(cp)) {
      case unicode::CharClass::kWord:
        if (word_start == std::string_view::npos) word_start = at;
        break;
      case unicode::CharClass::kSpace:
        close_word(at);
        break;
      case unicode::CharClass::kPunct:
        close_word(at);
        tokens.push_back({std::string(text.substr(at, pos - at)), at, pos});
        break;
    }
  }
  close_word(text.size());
  return tokens;
}

bool IsPunctuationToken(std::string_view surface) {
  std::size_t pos = 0;
  while (pos < surface.size()) {
    char32_t cp = unicode::DecodeNext(surface, pos);
    if (cp != U'_' && unicode::Classify(cp) == unicode::CharClass::kWord) return false;
  }
  return true;
}

std::vector<Token> RemoveNoise(const std::vector<Token>& tokens, const StopwordSet& stopwords) {
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (IsPunctuationToken(tok.surface)) continue;
    if (stopwords.contains(unicode::ToLower(tok.surface))) continue;
    kept.push_back(tok);
  }
  return kept;
}

std::vector<Token> Normalize(const std::vector<Token>& tokens, const LemmaTable& lemmas) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    Token t = tok;
    t.surface = unicode::ToLower(tok.surface);
    if (auto it = lemmas.find(t.surface); it != lemmas.end()) t.surface = it->second;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Token> RecognizeEntities(std::string_view text, const Gazetteer& gazetteer,
                                     const EntityOptions& options) {
  const auto tokens = Tokenize(text);
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const auto& tok : tokens) lower.push_back(unicode::ToLower(tok.surface));

  auto make_entity = [&](std::size_t first, std::size_t count) {
    const std::size_t start = tokens[first].start;
    const std::size_t end = tokens[first + count - 1].end;
    return Token{std::string(text.substr(start, end - start)), start, end};
  };

  std::vector<Token> entities;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t matched = 0;
    const std::size_t longest = std::min(gazetteer.max_words(), tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      std::vector<std::string> window(lower.begin() + static_cast<std::ptrdiff_t>(i),
                                      lower.begin() + static_cast<std::ptrdiff_t>(i + len));
      if (gazetteer.Contains(window)) {
        matched = len;
        break;
      }
    }
    if (matched == 0 && options.capitalized_spans) {
      std::size_t len = 0;
      while (i + len < tokens.size() && !IsPunctuationToken(tokens[i + len].surface) &&
             unicode::IsUpperInitial(tokens[i + len].surface)) {
        ++len;
      }
      if (len >= 2) matched = len;
    }
    if (matched > 0) {
      entities.push_back(make_entity(i, matched));
      i += matched;
    } else {
      ++i;
    }
  }
  return entities;
}

std::string CanonicalizeKey(std::string_view surface) {
  std::string joined;
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < surface.size()) {
    const std::size_t at = pos;
    const char32_t cp = unicode::DecodeNext(surface, pos);
    if (unicode::Classify(cp) == unicode::CharClass::kSpace) {
      pending_space = !joined.empty();
      continue;
    }
    if (pending_space) {
      joined.push_back('_');
      pending_space = false;
    }
    joined.append(surface.substr(at, pos - at));
  }
  return unicode::CapitalizeFirst(joined);
}

ConceptSet BuildConceptSet(const EssayRecord& essay, const StopwordSet& stopwords,
                           const LemmaTable& lemmas, const Gazetteer& gazetteer,
                           const EntityOptions& options) {
  const std::string text = unicode::NormalizeNfc(essay.text);
  const auto entities = RecognizeEntities(text, gazetteer, options);

  std::vector<Token> content;
  std::size_t next_entity = 0;
  for (auto& tok : Tokenize(text)) {
    while (next_entity < entities.size() && entities[next_entity].end <= tok.start) ++next_entity;
    const bool covered = next_entity < entities.size() && entities[next_entity].start <= tok.start &&
                         tok.end <= entities[next_entity].end;
    if (!covered) content.push_back(std::move(tok));
  }
  auto words = Normalize(RemoveNoise(content, stopwords), lemmas);

  std::vector<Token> merged;
  merged.reserve(words.size() + entities.size());
  std::merge(words.begin(), words.end(), entities.begin(), entities.end(),
             std::back_inserter(merged),
             [](const Token& a, const Token& b) { return a.start < b.start; });

  ConceptSet set;
  set.essay_id = essay.id;
  std::unordered_set<std::string> seen;
  for (const auto& tok : merged) {
    std::string key = CanonicalizeKey(tok.surface);
    if (key.empty()) continue;
    if (seen.insert(key).second) set.concepts.push_back(std::move(key));
  }
  return set;
}

ConceptSet DefaultAnalyzer::BuildConceptSet(const EssayRecord& essay) const {
  return kgapp::BuildConceptSet(essay, resources_.stopwords, resources_.lemmas,
                                resources_.gazetteer, resources_.entity_options);
}

std::string Detokenize(const ConceptSet& concepts) {
  std::string out;
  for (const auto& key : concepts.concepts) {
    if (!out.empty()) out.push_back(' ');
    for (char c : key) out.push_back(c == '_' ? ' ' : c);
  }
  return out;
}

StopwordSet LoadStopwords(const std::filesystem::path& path) {
  StopwordSet words;
  for (const auto& line : io::ReadLines(path)) {
    auto word = io::Trim(line);
    if (word.empty() || word.front() == '#') continue;
    words.insert(unicode::ToLower(word));
  }
  return words;
}

StopwordSet DefaultStopwords() {
  static const char* const kWords[] = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
      "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
      "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
      "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
      "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an",
      "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by",
      "for", "with", "about", "against", "between", "into", "through", "during", "before",
      "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
      "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
      "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
      "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
      "just", "don", "should", "now", "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren",
      "couldn", "didn", "doesn", "hadn", "hasn", "haven", "isn", "ma", "mightn", "mustn",
      "needn", "shan", "shouldn", "wasn", "weren", "won", "wouldn"};
  return StopwordSet(std::begin(kWords), std::end(kWords));
}

LemmaTable LoadLemmaTable(const std::filesystem::path& path) {
  LemmaTable table;
  std::size_t line_no = 0;
  for (const auto& line : io::ReadLines(path)) {
    ++line_no;
    if (io::Trim(line).empty() || line.front() == '#') continue;
    auto cols = io::Split(line, '\t');
    if (cols.size() != 2 || io::Trim(cols[0]).empty() || io::Trim(cols[1]).empty()) {
      throw ParseError("expected 'form<TAB>lemma'", ParseError::Unit::kLine, line_no);
    }
    table[unicode::ToLower(io::Trim(cols[0]))] = unicode::ToLower(io::Trim(cols[1]));
  }
  return table;
}

Gazetteer LoadGazetteer(const std::filesystem::path& path) {
  Gazetteer gazetteer;
  for (const auto& line : io::ReadLines(path)) {
    auto name = io::Trim(line);
    if (name.empty() || name.front() == '#') continue;
    gazetteer.Add(name);
  }
  return gazetteer;
}

}  // namespace kgapp

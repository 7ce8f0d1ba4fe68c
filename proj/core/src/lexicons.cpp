#include "kgapp/lexicons.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/ntriples.hpp"
#include "kgapp/resolver.hpp"
#include "kgapp/unicode.hpp"

namespace kgapp {

namespace {

bool ParseDouble(std::string_view text, double& value) {
  text = io::Trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && end == text.data() + text.size() && std::isfinite(value);
}

template <typename Fn>
void ForEachRecord(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  for (auto line : io::Split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (io::Trim(line).empty() || io::Trim(line).front() == '#') continue;
    auto cols = io::Split(line, '\t');
    if (cols.size() != 3) {
      throw ParseError("expected three tab-separated columns", ParseError::Unit::kLine, line_no);
    }
    fn(line_no, io::Trim(cols[0]), io::Trim(cols[1]), io::Trim(cols[2]));
  }
}

}  // namespace

bool IsEmotionName(std::string_view name) {
  return std::find(kEmotionNames.begin(), kEmotionNames.end(), name) != kEmotionNames.end();
}

const std::map<std::string, double>* EmotionLexicon::Find(const std::string& word) const {
  auto it = entries.find(word);
  return it == entries.end() ? nullptr : &it->second;
}

EmotionLexicon ParseNrcLexicon(std::string_view text) {
  EmotionLexicon lex;
  bool first = true;
  ForEachRecord(text, [&](std::size_t line_no, std::string_view word, std::string_view emotion,
                          std::string_view score_text) {
    const bool header = first && unicode::ToLower(score_text) == "score";
    first = false;
    if (header) return;
    if (word.empty()) throw ParseError("empty word", ParseError::Unit::kLine, line_no);
    std::string name = unicode::ToLower(emotion);
    if (!IsEmotionName(name)) {
      throw ParseError("unknown emotion '" + std::string(emotion) + "'", ParseError::Unit::kLine,
                       line_no);
    }
    double score = 0.0;
    if (!ParseDouble(score_text, score)) {
      throw ParseError("non-numeric score '" + std::string(score_text) + "'",
                       ParseError::Unit::kLine, line_no);
    }
    if (score < 0.0 || score > 1.0) {
      throw ParseError("score " + std::string(score_text) + " outside [0,1]",
                       ParseError::Unit::kLine, line_no);
    }
    lex.entries[unicode::ToLower(word)][name] = score;
  });
  return lex;
}

EmotionLexicon LoadNrcLexicon(const std::filesystem::path& path) {
  return ParseNrcLexicon(io::ReadFile(path));
}

MrcSchema::MrcSchema(std::vector<MrcAttribute> attributes) : attributes_(std::move(attributes)) {
  std::set<std::string> names;
  for (const auto& a : attributes_) {
    if (!names.insert(a.name).second) throw ConfigError("duplicate MRC attribute " + a.name);
  }
}

MrcSchema MrcSchema::Default() {
  using T = MrcAttribute::Type;
  return MrcSchema({
      {"nlet", T::kNumeric},          {"nphon", T::kNumeric},
      {"nsyl", T::kNumeric},          {"kf_freq", T::kNumeric},
      {"kf_ncats", T::kNumeric},      {"kf_nsamp", T::kNumeric},
      {"tl_freq", T::kNumeric},       {"brown_freq", T::kNumeric},
      {"familiarity", T::kNumeric},   {"concreteness", T::kNumeric},
      {"imageability", T::kNumeric},  {"meaningfulness_colorado", T::kNumeric},
      {"meaningfulness_paivio", T::kNumeric}, {"age_of_acquisition", T::kNumeric},
      {"type", T::kNumeric},          {"pdtype", T::kString},
      {"alphasyl", T::kString},       {"status", T::kString},
      {"variant", T::kString},        {"capitalisation", T::kString},
      {"irregular", T::kString},      {"word", T::kString},
      {"phonetic", T::kString},       {"dphonetic", T::kString},
      {"stress", T::kString},         {"tq2", T::kString},
  });
}

const MrcAttribute* MrcSchema::Find(std::string_view name) const {
  for (const auto& a : attributes_) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

const std::map<std::string, MrcValue>* PsycholinguisticTable::Find(const std::string& word) const {
  auto it = entries.find(word);
  return it == entries.end() ? nullptr : &it->second;
}

PsycholinguisticTable ParseMrcTable(std::string_view text, const MrcSchema& schema) {
  PsycholinguisticTable table;
  ForEachRecord(text, [&](std::size_t line_no, std::string_view word, std::string_view attribute,
                          std::string_view value) {
    const MrcAttribute* attr = schema.Find(unicode::ToLower(attribute));
    if (attr == nullptr) {
      throw ParseError("attribute '" + std::string(attribute) + "' is not in the schema",
                       ParseError::Unit::kLine, line_no);
    }
    if (word.empty()) throw ParseError("empty word", ParseError::Unit::kLine, line_no);
    MrcValue typed;
    if (attr->type == MrcAttribute::Type::kNumeric) {
      double v = 0.0;
      if (!ParseDouble(value, v)) {
        throw ParseError("attribute '" + attr->name + "' expects a number, got '" +
                             std::string(value) + "'",
                         ParseError::Unit::kLine, line_no);
      }
      typed = v;
    } else {
      typed = std::string(value);
    }
    table.entries[unicode::ToLower(word)][attr->name] = std::move(typed);
  });
  return table;
}

PsycholinguisticTable LoadMrcTable(const std::filesystem::path& path, const MrcSchema& schema) {
  return ParseMrcTable(io::ReadFile(path), schema);
}

OntologySource::OntologySource(std::vector<Triple> triples) : triples_(std::move(triples)) {
  Index();
}

OntologySource OntologySource::Load(const std::filesystem::path& path) {
  return OntologySource(LoadNTriples(path));
}

OntologySource OntologySource::FromResolver(ConceptResolver& resolver,
                                            const std::vector<std::string>& class_names) {
  const std::string ns = resolver.base_iri();
  std::vector<Triple> collected;
  std::set<std::string> visited;
  std::vector<std::string> frontier(class_names.begin(), class_names.end());
  while (!frontier.empty()) {
    std::string name = std::move(frontier.back());
    frontier.pop_back();
    if (!visited.insert(name).second) continue;
    Resolution r = resolver.Resolve(name);
    if (!r.resolved()) continue;
    const std::string iri = ns + name;
    for (auto& t : r.triples) {
      if (t.subject.value == iri && t.predicate.value == vocab::kRdfsSubClassOf &&
          t.object.is_iri() && t.object.value.starts_with(ns)) {
        frontier.push_back(t.object.value.substr(ns.size()));
      }
      if (t.subject.value.starts_with(ns) &&
          (t.predicate.value == vocab::kRdfsSubClassOf ||
           (t.predicate.value == vocab::kRdfType && t.object.value == vocab::kOwlClass))) {
        collected.push_back(std::move(t));
      }
    }
  }
  return OntologySource(std::move(collected));
}

void OntologySource::Index() {
  std::set<std::string> classes;
  for (const auto& t : triples_) {
    if (t.predicate.value == vocab::kRdfsSubClassOf && t.object.is_iri()) {
      parents_[t.subject.value].push_back(t.object.value);
      parents_.try_emplace(t.object.value);
    } else if (t.predicate.value == vocab::kRdfType && t.object.value == vocab::kOwlClass) {
      parents_.try_emplace(t.subject.value);
    }
  }
  for (auto& [cls, ps] : parents_) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  }
  // Iterative DFS cycle check.
  enum class Mark { kNone, kActive, kDone };
  std::map<std::string, Mark> mark;
  for (const auto& [root, unused] : parents_) {
    if (mark[root] != Mark::kNone) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::kActive;
    while (!stack.empty()) {
      auto& [node, idx] = stack.back();
      const auto& ps = parents_.at(node);
      if (idx == ps.size()) {
        mark[node] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      const std::string next = ps[idx++];
      Mark m = mark[next];
      if (m == Mark::kActive) throw DomainError("ontology class hierarchy has a cycle at " + next);
      if (m == Mark::kNone) {
        mark[next] = Mark::kActive;
        stack.emplace_back(next, 0);
      }
    }
  }
}

bool OntologySource::HasClass(const std::string& class_iri) const {
  return parents_.contains(class_iri);
}

const std::vector<std::string>& OntologySource::Parents(const std::string& class_iri) const {
  static const std::vector<std::string> kNone;
  auto it = parents_.find(class_iri);
  return it == parents_.end() ? kNone : it->second;
}

std::vector<Triple> OntologySource::SuperclassChain(const std::string& class_iri) const {
  std::set<Triple> edges;
  std::set<std::string> seen{class_iri};
  std::vector<std::string> frontier{class_iri};
  const Term sub_class_of = Term::Iri(std::string(vocab::kRdfsSubClassOf));
  while (!frontier.empty()) {
    std::string cls = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& parent : Parents(cls)) {
      edges.insert(Triple{Term::Iri(cls), sub_class_of, Term::Iri(parent)});
      if (seen.insert(parent).second) frontier.push_back(parent);
    }
  }
  return {edges.begin(), edges.end()};
}

}  // namespace kgapp

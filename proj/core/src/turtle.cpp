#include <cctype>
#include <algorithm>
#include <map>

#include "kgapp/ntriples.hpp"
#include "rdf_lexing.hpp"

namespace kgapp {

namespace {

bool IsPnChar(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-' || c == '.' || c >= 0x80;
}

std::string ResolveIri(std::string_view base, std::string iri) {
  if (base.empty() || IsAbsoluteIri(iri)) return iri;
  if (iri.empty() || iri.front() == '#') return std::string(base) + iri;
  if (iri.front() == '/') {
    std::size_t scheme_end = base.find("://");
    std::size_t path_start =
        scheme_end == std::string_view::npos ? std::string_view::npos : base.find('/', scheme_end + 3);
    return std::string(base.substr(0, path_start)) + iri;
  }
  std::size_t slash = base.rfind('/');
  return std::string(base.substr(0, slash == std::string_view::npos ? 0 : slash + 1)) + iri;
}

class TurtleParser {
 public:
  TurtleParser(std::string_view doc, const RdfParseOptions& options) : cur_(doc), options_(options) {}

  std::vector<Triple> Parse() {
    while (true) {
      SkipWs();
      if (cur_.AtEnd()) break;
      if (TryDirective()) continue;
      Statement();
    }
    return std::move(triples_);
  }

 private:
  void SkipWs() {
    while (!cur_.AtEnd()) {
      char c = cur_.Peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        cur_.Advance();
      } else if (c == '#') {
        while (!cur_.AtEnd() && cur_.Peek() != '\n') cur_.Advance();
      } else {
        break;
      }
    }
  }

  bool KeywordAhead(std::string_view kw) const {
    std::string_view rest = cur_.text().substr(cur_.pos());
    if (rest.size() < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(rest[i])) != kw[i]) return false;
    }
    return rest.size() == kw.size() || rest[kw.size()] == ' ' || rest[kw.size()] == '\t' ||
           rest[kw.size()] == '\n' || rest[kw.size()] == '<';
  }

  bool TryDirective() {
    bool at = cur_.Peek() == '@';
    if (at) {
      cur_.Advance();
      if (cur_.StartsWith("prefix")) {
        cur_.Expect("prefix");
        Prefix();
      } else if (cur_.StartsWith("base")) {
        cur_.Expect("base");
        SkipWs();
        base_ = ResolveIri(base_, rdf_lex::ReadIriRef(cur_));
      } else {
        cur_.Fail("unknown directive");
      }
      SkipWs();
      if (cur_.Advance() != '.') cur_.Fail("expected '.' after directive");
      return true;
    }
    if (KeywordAhead("PREFIX")) {
      cur_.set_pos(cur_.pos() + 6);
      Prefix();
      return true;
    }
    if (KeywordAhead("BASE")) {
      cur_.set_pos(cur_.pos() + 4);
      SkipWs();
      base_ = ResolveIri(base_, rdf_lex::ReadIriRef(cur_));
      return true;
    }
    return false;
  }

  void Prefix() {
    SkipWs();
    std::string name;
    while (!cur_.AtEnd() && cur_.Peek() != ':') {
      unsigned char c = static_cast<unsigned char>(cur_.Peek());
      if (!IsPnChar(c)) cur_.Fail("invalid prefix name");
      name.push_back(cur_.Advance());
    }
    cur_.Expect(":");
    SkipWs();
    prefixes_[name] = ResolveIri(base_, rdf_lex::ReadIriRef(cur_));
  }

  void Statement() {
    Term subject = Subject();
    SkipWs();
    PredicateObjectList(subject);
    SkipWs();
    if (cur_.Advance() != '.') cur_.Fail("expected '.' after statement");
  }

  void PredicateObjectList(const Term& subject) {
    while (true) {
      Term predicate = Verb();
      while (true) {
        SkipWs();
        Term object = Object();
        triples_.push_back(Triple{subject, predicate, std::move(object)});
        SkipWs();
        if (cur_.Peek() != ',') break;
        cur_.Advance();
      }
      SkipWs();
      if (cur_.Peek() != ';') break;
      while (cur_.Peek() == ';') {
        cur_.Advance();
        SkipWs();
      }
      if (cur_.Peek() == '.' || cur_.Peek() == ']') break;
    }
  }

  Term Subject() {
    char c = cur_.Peek();
    if (c == '<') return Term::Iri(ResolveIri(base_, rdf_lex::ReadIriRef(cur_)));
    if (c == '_' && cur_.Peek(1) == ':') {
      return Term::Iri(rdf_lex::ReadBlankNode(cur_, options_.blank_node_scope));
    }
    if (c == '[' || c == '(') cur_.Fail("anonymous blank nodes and collections are not supported");
    return Term::Iri(PrefixedName());
  }

  Term Verb() {
    if (cur_.Peek() == 'a') {
      char next = cur_.Peek(1);
      if (next == ' ' || next == '\t' || next == '\n' || next == '\r' || next == '<' ||
          next == '"' || next == '_') {
        cur_.Advance();
        return Term::Iri(std::string(vocab::kRdfType));
      }
    }
    if (cur_.Peek() == '<') return Term::Iri(ResolveIri(base_, rdf_lex::ReadIriRef(cur_)));
    return Term::Iri(PrefixedName());
  }

  Term Object() {
    char c = cur_.Peek();
    if (c == '<') return Term::Iri(ResolveIri(base_, rdf_lex::ReadIriRef(cur_)));
    if (c == '_' && cur_.Peek(1) == ':') {
      return Term::Iri(rdf_lex::ReadBlankNode(cur_, options_.blank_node_scope));
    }
    if (c == '"' || c == '\'') return StringLiteral(c);
    if (c == '[' || c == '(') cur_.Fail("anonymous blank nodes and collections are not supported");
    if (c == '+' || c == '-' || c == '.' || (c >= '0' && c <= '9')) return NumericLiteral();
    if (KeywordBoolean("true")) return Term::Literal("true", std::string(vocab::kXsdBoolean));
    if (KeywordBoolean("false")) return Term::Literal("false", std::string(vocab::kXsdBoolean));
    return Term::Iri(PrefixedName());
  }

  bool KeywordBoolean(std::string_view kw) {
    if (!cur_.StartsWith(kw)) return false;
    char after = cur_.Peek(kw.size());
    if (IsPnChar(static_cast<unsigned char>(after)) || after == ':') return false;
    cur_.set_pos(cur_.pos() + kw.size());
    return true;
  }

  Term StringLiteral(char quote) {
    std::string lexical;
    if (cur_.Peek(1) == quote && cur_.Peek(2) == quote) {
      lexical = rdf_lex::ReadLongString(cur_, quote);
    } else {
      lexical = rdf_lex::ReadQuotedString(cur_, quote);
    }
    if (cur_.Peek() == '@') return Term::Literal(std::move(lexical), {}, rdf_lex::ReadLangTag(cur_));
    if (cur_.StartsWith("^^")) {
      cur_.Expect("^^");
      std::string dt = cur_.Peek() == '<' ? ResolveIri(base_, rdf_lex::ReadIriRef(cur_)) : PrefixedName();
      return Term::Literal(std::move(lexical), std::move(dt));
    }
    return Term::Literal(std::move(lexical));
  }

  Term NumericLiteral() {
    std::string lex;
    if (cur_.Peek() == '+' || cur_.Peek() == '-') lex.push_back(cur_.Advance());
    auto digits = [&] {
      std::size_t n = 0;
      while (cur_.Peek() >= '0' && cur_.Peek() <= '9') {
        lex.push_back(cur_.Advance());
        ++n;
      }
      return n;
    };
    std::size_t int_digits = digits();
    bool decimal = false;
    std::size_t frac_digits = 0;
    if (cur_.Peek() == '.' && cur_.Peek(1) >= '0' && cur_.Peek(1) <= '9') {
      decimal = true;
      lex.push_back(cur_.Advance());
      frac_digits = digits();
    }
    bool exponent = false;
    if (cur_.Peek() == 'e' || cur_.Peek() == 'E') {
      exponent = true;
      lex.push_back(cur_.Advance());
      if (cur_.Peek() == '+' || cur_.Peek() == '-') lex.push_back(cur_.Advance());
      if (digits() == 0) cur_.Fail("malformed exponent");
    }
    if (int_digits + frac_digits == 0) cur_.Fail("malformed numeric literal");
    std::string_view dt = exponent ? vocab::kXsdDouble : decimal ? vocab::kXsdDecimal : vocab::kXsdInteger;
    return Term::Literal(std::move(lex), std::string(dt));
  }

  std::string PrefixedName() {
    std::string prefix;
    while (!cur_.AtEnd() && cur_.Peek() != ':') {
      unsigned char c = static_cast<unsigned char>(cur_.Peek());
      if (!IsPnChar(c)) cur_.Fail("expected IRI, prefixed name or literal");
      prefix.push_back(cur_.Advance());
    }
    if (cur_.AtEnd()) cur_.Fail("expected ':' in prefixed name");
    cur_.Advance();
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) cur_.Fail("undeclared prefix '" + prefix + "'");
    std::string local;
    while (!cur_.AtEnd()) {
      unsigned char c = static_cast<unsigned char>(cur_.Peek());
      if (IsPnChar(c) || c == ':' || c == '%') {
        local.push_back(cur_.Advance());
      } else if (c == '\\') {
        cur_.Advance();
        local.push_back(cur_.Advance());
      } else {
        break;
      }
    }
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      cur_.set_pos(cur_.pos() - 1);
    }
    return it->second + local;
  }

  rdf_lex::Cursor cur_;
  const RdfParseOptions& options_;
  std::string base_;
  std::map<std::string, std::string> prefixes_;
  std::vector<Triple> triples_;
};

}  // namespace

std::vector<Triple> ParseTurtle(std::string_view document, const RdfParseOptions& options) {
  try {
    return TurtleParser(document, options).Parse();
  } catch (const rdf_lex::LexError& e) {
    if (options.error_unit == ParseError::Unit::kLine) {
      std::size_t line = 1 + static_cast<std::size_t>(std::count(
                                 document.begin(),
                                 document.begin() + static_cast<std::ptrdiff_t>(
                                                        std::min(e.offset, document.size())),
                                 '\n'));
      throw ParseError(e.what(), ParseError::Unit::kLine, line);
    }
    throw ParseError(e.what(), ParseError::Unit::kByte, e.offset);
  }
}

}  // namespace kgapp

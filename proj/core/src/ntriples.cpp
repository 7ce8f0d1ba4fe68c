#include "kgapp/ntriples.hpp"


#include "kgapp/io.hpp"
#include "rdf_lexing.hpp"

namespace kgapp {

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_offset, const RdfParseOptions& options)
      : cur_(line, line_offset), options_(options) {}

  // Returns false for blank/comment lines.
  bool Parse(Triple& out) {
    cur_.SkipSpaces();
    if (cur_.AtEnd() || cur_.Peek() == '#') return false;
    out.subject = SubjectOrObject(/*allow_literal=*/false);
    cur_.SkipSpaces();
    if (cur_.Peek() != '<') cur_.Fail("predicate must be an IRI");
    out.predicate = Term::Iri(AbsoluteIri());
    cur_.SkipSpaces();
    out.object = SubjectOrObject(/*allow_literal=*/true);
    cur_.SkipSpaces();
    if (cur_.Peek() != '.') cur_.Fail("expected '.' terminating the triple");
    cur_.Advance();
    cur_.SkipSpaces();
    if (!cur_.AtEnd() && cur_.Peek() != '#') cur_.Fail("unexpected content after '.'");
    return true;
  }

 private:
  // N-Triples has no base IRI, so every IRI needs a scheme.
  std::string AbsoluteIri() {
    std::string iri = rdf_lex::ReadIriRef(cur_);
    if (!IsAbsoluteIri(iri)) cur_.Fail("relative IRI <" + iri + ">");
    return iri;
  }

  Term SubjectOrObject(bool allow_literal) {
    char c = cur_.Peek();
    if (c == '<') return Term::Iri(AbsoluteIri());
    if (c == '_') return Term::Iri(rdf_lex::ReadBlankNode(cur_, options_.blank_node_scope));
    if (c == '"' && allow_literal) {
      std::string lexical = rdf_lex::ReadQuotedString(cur_, '"');
      std::string datatype, lang;
      if (cur_.Peek() == '^') {
        cur_.Expect("^^");
        if (cur_.Peek() != '<') cur_.Fail("datatype must be an IRI");
        datatype = AbsoluteIri();
      } else if (cur_.Peek() == '@') {
        lang = rdf_lex::ReadLangTag(cur_);
      }
      return Term::Literal(std::move(lexical), std::move(datatype), std::move(lang));
    }
    cur_.Fail(allow_literal ? "expected IRI, blank node or literal" : "expected IRI or blank node");
  }

  rdf_lex::Cursor cur_;
  const RdfParseOptions& options_;
};

}  // namespace

std::vector<Triple> ParseNTriples(std::string_view document, const RdfParseOptions& options) {
  std::vector<Triple> triples;
  std::size_t offset = 0;
  std::size_t line_no = 0;
  while (offset < document.size()) {
    ++line_no;
    std::size_t eol = document.find('\n', offset);
    if (eol == std::string_view::npos) eol = document.size();
    std::string_view line = document.substr(offset, eol - offset);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    try {
      Triple t;
      LineParser parser(line, offset, options);
      if (parser.Parse(t)) triples.push_back(std::move(t));
    } catch (const rdf_lex::LexError& e) {
      if (options.error_unit == ParseError::Unit::kByte) {
        throw ParseError(e.what(), ParseError::Unit::kByte, e.offset);
      }
      throw ParseError(e.what(), ParseError::Unit::kLine, line_no);
    }
    offset = eol + 1;
  }
  return triples;
}

std::vector<Triple> LoadNTriples(const std::filesystem::path& path, const RdfParseOptions& options) {
  return ParseNTriples(io::ReadFile(path), options);
}

}  // namespace kgapp

#include "rdf_lexing.hpp"

#include "kgapp/rdf.hpp"

namespace kgapp::rdf_lex {

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool IsBlankLabelChar(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-' || c == '.' || c >= 0x80;
}

void AppendEscape(Cursor& cur, std::string& out) {
  char e = cur.Advance();
  switch (e) {
    case 't': out.push_back('\t'); break;
    case 'b': out.push_back('\b'); break;
    case 'n': out.push_back('\n'); break;
    case 'r': out.push_back('\r'); break;
    case 'f': out.push_back('\f'); break;
    case '"': out.push_back('"'); break;
    case '\'': out.push_back('\''); break;
    case '\\': out.push_back('\\'); break;
    case 'u':
    case 'U':
      cur.set_pos(cur.pos() - 1);
      AppendUtf8(out, ReadUcharEscape(cur));
      break;
    default:
      cur.Fail(std::string("invalid escape '\\") + e + "'");
  }
}

}  // namespace

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

char32_t ReadUcharEscape(Cursor& cur) {
  char kind = cur.Advance();
  int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
  if (digits == 0) cur.Fail("expected \\u or \\U escape");
  char32_t cp = 0;
  for (int i = 0; i < digits; ++i) {
    int h = HexValue(cur.Peek());
    if (h < 0) cur.Fail("invalid hex digit in unicode escape");
    cur.Advance();
    cp = (cp << 4) | static_cast<char32_t>(h);
  }
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cur.Fail("escape is not a scalar value");
  return cp;
}

std::string ReadIriRef(Cursor& cur) {
  cur.Expect("<");
  std::string iri;
  while (true) {
    if (cur.AtEnd()) cur.Fail("unterminated IRI");
    unsigned char c = static_cast<unsigned char>(cur.Advance());
    if (c == '>') break;
    if (c == '\\') {
      AppendUtf8(iri, ReadUcharEscape(cur));
      continue;
    }
    if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`') {
      cur.Fail("invalid character in IRI");
    }
    iri.push_back(static_cast<char>(c));
  }
  return iri;
}

std::string SkolemIri(std::string_view scope, std::string_view label) {
  std::string iri(vocab::kBlankNodePrefix);
  if (!scope.empty()) {
    iri.append(scope);
    iri.push_back(':');
  }
  iri.append(label);
  return iri;
}

std::string ReadBlankNode(Cursor& cur, std::string_view scope) {
  cur.Expect("_:");
  std::string label;
  while (!cur.AtEnd() && IsBlankLabelChar(static_cast<unsigned char>(cur.Peek()))) {
    label.push_back(cur.Advance());
  }
  // A trailing '.' terminates the statement rather than the label.
  while (!label.empty() && label.back() == '.') {
    label.pop_back();
    cur.set_pos(cur.pos() - 1);
  }
  if (label.empty()) cur.Fail("empty blank node label");
  return SkolemIri(scope, label);
}

std::string ReadQuotedString(Cursor& cur, char quote) {
  if (cur.Advance() != quote) cur.Fail("expected string literal");
  std::string out;
  while (true) {
    if (cur.AtEnd()) cur.Fail("unterminated string literal");
    char c = cur.Advance();
    if (c == quote) break;
    if (c == '\n' || c == '\r') cur.Fail("newline inside string literal");
    if (c == '\\') {
      AppendEscape(cur, out);
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::string ReadLongString(Cursor& cur, char quote) {
  const std::string delim(3, quote);
  cur.Expect(delim);
  std::string out;
  while (true) {
    if (cur.AtEnd()) cur.Fail("unterminated long string literal");
    if (cur.StartsWith(delim) && cur.Peek(3) != quote) {
      cur.Expect(delim);
      break;
    }
    char c = cur.Advance();
    if (c == '\\') {
      AppendEscape(cur, out);
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::string ReadLangTag(Cursor& cur) {
  cur.Expect("@");
  std::string tag;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  while (alpha(cur.Peek())) tag.push_back(cur.Advance());
  if (tag.empty()) cur.Fail("empty language tag");
  while (cur.Peek() == '-') {
    tag.push_back(cur.Advance());
    std::size_t n = 0;
    while (alpha(cur.Peek()) || (cur.Peek() >= '0' && cur.Peek() <= '9')) {
      tag.push_back(cur.Advance());
      ++n;
    }
    if (n == 0) cur.Fail("empty language subtag");
  }
  return tag;
}

}  // namespace kgapp::rdf_lex

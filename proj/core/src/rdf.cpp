#include "kgapp/rdf.hpp"

#include <algorithm>
#include <cstdio>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"

namespace kgapp {

namespace {

void AppendUchar(std::string& out, unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "\\u%04X", c);
  out += buf;
}

std::string EscapeIri(std::string_view iri) {
  std::string out;
  out.reserve(iri.size());
  for (unsigned char c : iri) {
    switch (c) {
      case '<': case '>': case '"': case '{': case '}': case '|': case '^': case '`': case '\\':
        AppendUchar(out, c);
        break;
      default:
        if (c <= 0x20) {
          AppendUchar(out, c);
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  return out;
}

std::string EscapeLiteral(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size() + 2);
  for (unsigned char c : lexical) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          AppendUchar(out, c);
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  return out;
}

}  // namespace

Term Term::Iri(std::string iri) {
  Term t;
  t.kind = Kind::kIri;
  t.value = std::move(iri);
  return t;
}

Term Term::Literal(std::string lexical, std::string datatype, std::string lang) {
  if (!datatype.empty() && !lang.empty()) {
    throw DomainError("literal cannot carry both a datatype and a language tag");
  }
  Term t;
  t.kind = Kind::kLiteral;
  t.value = std::move(lexical);
  t.datatype = std::move(datatype);
  t.lang = std::move(lang);
  return t;
}

Term Term::Real(double value) {
  return Literal(io::FormatReal(value), std::string(vocab::kXsdDouble));
}

std::string FormatTerm(const Term& term) {
  if (term.is_iri()) return "<" + EscapeIri(term.value) + ">";
  std::string out = "\"" + EscapeLiteral(term.value) + "\"";
  if (!term.datatype.empty()) {
    out += "^^<" + EscapeIri(term.datatype) + ">";
  } else if (!term.lang.empty()) {
    out += "@" + term.lang;
  }
  return out;
}

std::string FormatTriple(const Triple& triple) {
  return FormatTerm(triple.subject) + " " + FormatTerm(triple.predicate) + " " +
         FormatTerm(triple.object) + " .";
}

std::string SerializeNTriples(const std::vector<Triple>& triples) {
  std::vector<std::string> lines;
  lines.reserve(triples.size());
  for (const auto& t : triples) lines.push_back(FormatTriple(t));
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out.push_back('\n');
  }
  return out;
}

bool IsAbsoluteIri(std::string_view iri) {
  // scheme ":" ...
  std::size_t colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(iri[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = iri[i];
    if (!(alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.')) return false;
  }
  return true;
}

}  // namespace kgapp

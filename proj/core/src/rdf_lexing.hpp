#pragma once

// Shared lexical helpers for the N-Triples and Turtle readers.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kgapp::rdf_lex {

struct LexError : std::runtime_error {
  LexError(const std::string& what, std::size_t at) : std::runtime_error(what), offset(at) {}
  std::size_t offset;
};

class Cursor {
 public:
  // `base_offset` is the byte offset of `text` within the whole document.
  Cursor(std::string_view text, std::size_t base_offset = 0) : text_(text), base_(base_offset) {}

  bool AtEnd() const noexcept { return pos_ >= text_.size(); }
  char Peek(std::size_t ahead = 0) const noexcept {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char Advance() { return AtEnd() ? '\0' : text_[pos_++]; }
  bool StartsWith(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  void Expect(std::string_view s) {
    if (!StartsWith(s)) Fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }
  void SkipSpaces() {
    while (!AtEnd() && (Peek() == ' ' || Peek() == '\t')) ++pos_;
  }
  std::size_t offset() const noexcept { return base_ + pos_; }
  std::size_t pos() const noexcept { return pos_; }
  std::string_view text() const noexcept { return text_; }
  void set_pos(std::size_t p) noexcept { pos_ = p; }

  [[noreturn]] void Fail(const std::string& what) const { throw LexError(what, offset()); }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

void AppendUtf8(std::string& out, char32_t cp);

// Reads `\uXXXX` or `\UXXXXXXXX` after the backslash has been consumed.
char32_t ReadUcharEscape(Cursor& cur);

// `<...>` with UCHAR escapes decoded.
std::string ReadIriRef(Cursor& cur);

// `_:label`, returned as the skolemized IRI for `scope`.
std::string ReadBlankNode(Cursor& cur, std::string_view scope);

// Single-line quoted string with ECHAR/UCHAR escapes; `quote` is `"` or `'`.
std::string ReadQuotedString(Cursor& cur, char quote);

// Triple-quoted string (Turtle long string).
std::string ReadLongString(Cursor& cur, char quote);

// `@lang-TAG`
std::string ReadLangTag(Cursor& cur);

std::string SkolemIri(std::string_view scope, std::string_view label);

}  // namespace kgapp::rdf_lex

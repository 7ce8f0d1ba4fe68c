#include "kgapp/unicode.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "kgapp/error.hpp"

namespace kgapp::unicode {

std::string NormalizeNfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString dst = nfc->normalize(src, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string out;
  dst.toUTF8String(out);
  return out;
}

std::string ToLower(std::string_view utf8) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  s.toLower(icu::Locale::getRoot());
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::string CapitalizeFirst(std::string_view utf8) {
  if (utf8.empty()) return {};
  std::size_t pos = 0;
  char32_t cp = DecodeNext(utf8, pos);
  icu::UnicodeString head(static_cast<UChar32>(cp));
  head.toUpper(icu::Locale::getRoot());
  std::string out;
  head.toUTF8String(out);
  out.append(utf8.substr(pos));
  return out;
}

bool IsUpperInitial(std::string_view utf8) {
  if (utf8.empty()) return false;
  std::size_t pos = 0;
  return u_isupper(static_cast<UChar32>(DecodeNext(utf8, pos)));
}

CharClass Classify(char32_t cp) {
  auto c = static_cast<UChar32>(cp);
  if (u_isUWhiteSpace(c) || u_iscntrl(c)) return CharClass::kSpace;
  // Underscore joins multi-word concept keys, so it stays inside words.
  if (c == '_' || u_hasBinaryProperty(c, UCHAR_ALPHABETIC) || u_isdigit(c) ||
      u_charType(c) == U_NON_SPACING_MARK || u_charType(c) == U_COMBINING_SPACING_MARK) {
    return CharClass::kWord;
  }
  return CharClass::kPunct;
}

char32_t DecodeNext(std::string_view utf8, std::size_t& pos) {
  auto length = static_cast<int32_t>(utf8.size());
  auto i = static_cast<int32_t>(pos);
  UChar32 c = 0;
  U8_NEXT(reinterpret_cast<const uint8_t*>(utf8.data()), i, length, c);
  pos = static_cast<std::size_t>(i);
  if (c < 0) return U'�';
  return static_cast<char32_t>(c);
}

}  // namespace kgapp::unicode

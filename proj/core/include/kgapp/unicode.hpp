#pragma once

#include <string>
#include <string_view>

namespace kgapp::unicode {

std::string NormalizeNfc(std::string_view utf8);
std::string ToLower(std::string_view utf8);

// Uppercases the first code point only; the remainder is left untouched.
std::string CapitalizeFirst(std::string_view utf8);

bool IsUpperInitial(std::string_view utf8);

enum class CharClass { kWord, kSpace, kPunct };
CharClass Classify(char32_t cp);

// Decodes one code point at `pos`, advancing it. Invalid bytes decode to
// U+FFFD and consume one byte.
char32_t DecodeNext(std::string_view utf8, std::size_t& pos);

}  // namespace kgapp::unicode

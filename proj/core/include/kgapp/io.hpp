#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgapp::io {

std::string ReadFile(const std::filesystem::path& path);

// Writes through a sibling temp file and renames it into place, so readers
// never observe a partially written file.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

std::vector<std::string> ReadLines(const std::filesystem::path& path);

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

// Percent-encodes every byte outside [A-Za-z0-9._~-]. Used for cache file
// names, so the result is always a single safe path component.
std::string PercentEncode(std::string_view raw);
std::string PercentDecode(std::string_view encoded);

// 64-bit FNV-1a; stable across platforms, used for derived seeds.
std::uint64_t Fnv1a64(std::string_view bytes);

// Shortest round-trip decimal representation.
std::string FormatReal(double value);

std::vector<std::string_view> Split(std::string_view text, char sep);
std::string_view Trim(std::string_view text);

}  // namespace kgapp::io

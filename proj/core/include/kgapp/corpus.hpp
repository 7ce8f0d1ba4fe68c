#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kgapp {

// Fixed OCEAN order used for serialization, reports and model heads.
enum class Trait : std::size_t {
  kOpenness = 0,
  kConscientiousness = 1,
  kExtroversion = 2,
  kAgreeableness = 3,
  kNeuroticism = 4,
};

inline constexpr std::size_t kTraitCount = 5;
inline constexpr std::array<Trait, kTraitCount> kAllTraits = {
    Trait::kOpenness, Trait::kConscientiousness, Trait::kExtroversion, Trait::kAgreeableness,
    Trait::kNeuroticism};

std::string_view TraitName(Trait t);
// Single-letter symbol: O, C, E, A, N.
std::string_view TraitSymbol(Trait t);

struct TraitLabels {
  bool openness = false;
  bool conscientiousness = false;
  bool extroversion = false;
  bool agreeableness = false;
  bool neuroticism = false;

  bool get(Trait t) const;
  void set(Trait t, bool value);
  // Bit i set iff trait i (OCEAN order) is true.
  std::uint8_t mask() const;
  static TraitLabels FromMask(std::uint8_t mask);

  friend bool operator==(const TraitLabels&, const TraitLabels&) = default;
};

struct EssayRecord {
  std::string id;
  std::string text;
  TraitLabels labels;
};

using Corpus = std::vector<EssayRecord>;

// Header names of the id, text and label columns in a delimited corpus file.
struct ColumnMap {
  std::string id = "#AUTHID";
  std::string text = "TEXT";
  std::array<std::string, kTraitCount> traits = {"cOPN", "cCON", "cEXT", "cAGR", "cNEU"};
};

bool DecodeLabel(std::string_view cell, bool& value);
// Canonical encoding: "y" / "n".
std::string_view EncodeLabel(bool value);

Corpus LoadEssays(const std::filesystem::path& path, const ColumnMap& columns,
                  char delimiter = ',');
Corpus ParseEssays(std::string_view text, const ColumnMap& columns, char delimiter = ',');

struct LabelCount {
  std::size_t true_count = 0;
  std::size_t false_count = 0;
};

using CorrelationMatrix = std::array<std::array<double, kTraitCount>, kTraitCount>;

struct CorpusStats {
  std::array<LabelCount, kTraitCount> distribution{};
  CorrelationMatrix correlation{};
  // Indexed by 5-bit trait mask.
  std::array<std::size_t, 32> intersections{};
};

std::array<LabelCount, kTraitCount> LabelDistribution(const Corpus& corpus);

// Phi coefficient between every pair of binary trait columns.
CorrelationMatrix LabelCorrelation(const Corpus& corpus);

std::array<std::size_t, 32> TraitIntersections(const Corpus& corpus);

CorpusStats ComputeStats(const Corpus& corpus);

// Flat `key=value` report.
std::string FormatStatsReport(const CorpusStats& stats, std::size_t corpus_size);
std::string FormatDistributionTable(const CorpusStats& stats);
std::string FormatCorrelationTable(const CorpusStats& stats);
std::string FormatIntersectionTable(const CorpusStats& stats);

}  // namespace kgapp

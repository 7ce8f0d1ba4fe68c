#include "kgapp/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "kgapp/csv.hpp"
#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/unicode.hpp"

namespace kgapp {

std::string_view TraitName(Trait t) {
  switch (t) {
    case Trait::kOpenness: return "openness";
    case Trait::kConscientiousness: return "conscientiousness";
    case Trait::kExtroversion: return "extroversion";
    case Trait::kAgreeableness: return "agreeableness";
    case Trait::kNeuroticism: return "neuroticism";
  }
  return "?";
}

std::string_view TraitSymbol(Trait t) {
  static constexpr std::string_view kSymbols[] = {"O", "C", "E", "A", "N"};
  return kSymbols[static_cast<std::size_t>(t)];
}

bool TraitLabels::get(Trait t) const {
  switch (t) {
    case Trait::kOpenness: return openness;
    case Trait::kConscientiousness: return conscientiousness;
    case Trait::kExtroversion: return extroversion;
    case Trait::kAgreeableness: return agreeableness;
    case Trait::kNeuroticism: return neuroticism;
  }
  return false;
}

void TraitLabels::set(Trait t, bool value) {
  switch (t) {
    case Trait::kOpenness: openness = value; break;
    case Trait::kConscientiousness: conscientiousness = value; break;
    case Trait::kExtroversion: extroversion = value; break;
    case Trait::kAgreeableness: agreeableness = value; break;
    case Trait::kNeuroticism: neuroticism = value; break;
  }
}

std::uint8_t TraitLabels::mask() const {
  std::uint8_t m = 0;
  for (Trait t : kAllTraits) {
    if (get(t)) m |= static_cast<std::uint8_t>(1u << static_cast<std::size_t>(t));
  }
  return m;
}

TraitLabels TraitLabels::FromMask(std::uint8_t mask) {
  TraitLabels labels;
  for (Trait t : kAllTraits) labels.set(t, (mask >> static_cast<std::size_t>(t)) & 1u);
  return labels;
}

bool DecodeLabel(std::string_view cell, bool& value) {
  std::string lower = unicode::ToLower(io::Trim(cell));
  if (lower == "y" || lower == "1" || lower == "true") {
    value = true;
    return true;
  }
  if (lower == "n" || lower == "0" || lower == "false") {
    value = false;
    return true;
  }
  return false;
}

std::string_view EncodeLabel(bool value) { return value ? "y" : "n"; }

Corpus ParseEssays(std::string_view text, const ColumnMap& columns, char delimiter) {
  csv::Reader reader(text, delimiter);
  std::vector<std::string> header;
  if (!reader.Next(header)) throw ParseError("missing header row", ParseError::Unit::kRow, 1);

  auto find_column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (io::Trim(header[i]) == name) return i;
    }
    throw ConfigError("corpus is missing column '" + name + "'");
  };
  const std::size_t id_col = find_column(columns.id);
  const std::size_t text_col = find_column(columns.text);
  std::array<std::size_t, kTraitCount> trait_cols{};
  for (std::size_t i = 0; i < kTraitCount; ++i) trait_cols[i] = find_column(columns.traits[i]);

  Corpus corpus;
  std::set<std::string> seen;
  std::vector<std::string> row;
  std::size_t row_number = 0;
  while (reader.Next(row)) {
    ++row_number;
    if (row.size() < header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " cells, found " +
                           std::to_string(row.size()),
                       ParseError::Unit::kRow, row_number);
    }
    EssayRecord rec;
    rec.id = std::string(io::Trim(row[id_col]));
    rec.text = row[text_col];
    if (rec.id.empty()) throw ParseError("empty id cell", ParseError::Unit::kRow, row_number);
    if (io::Trim(rec.text).empty()) {
      throw ParseError("empty text cell", ParseError::Unit::kRow, row_number);
    }
    if (!seen.insert(rec.id).second) {
      throw ParseError("duplicate essay id '" + rec.id + "'", ParseError::Unit::kRow, row_number);
    }
    for (std::size_t i = 0; i < kTraitCount; ++i) {
      bool value = false;
      if (!DecodeLabel(row[trait_cols[i]], value)) {
        throw ParseError("undecodable label '" + row[trait_cols[i]] + "' in column " +
                             columns.traits[i],
                         ParseError::Unit::kRow, row_number);
      }
      rec.labels.set(kAllTraits[i], value);
    }
    corpus.push_back(std::move(rec));
  }
  return corpus;
}

Corpus LoadEssays(const std::filesystem::path& path, const ColumnMap& columns, char delimiter) {
  return ParseEssays(io::ReadFile(path), columns, delimiter);
}

std::array<LabelCount, kTraitCount> LabelDistribution(const Corpus& corpus) {
  if (corpus.empty()) throw DomainError("label distribution of an empty corpus");
  std::array<LabelCount, kTraitCount> counts{};
  for (const auto& essay : corpus) {
    for (Trait t : kAllTraits) {
      auto& c = counts[static_cast<std::size_t>(t)];
      (essay.labels.get(t) ? c.true_count : c.false_count)++;
    }
  }
  return counts;
}

CorrelationMatrix LabelCorrelation(const Corpus& corpus) {
  if (corpus.size() < 2) throw DomainError("correlation needs at least two essays");
  const double n = static_cast<double>(corpus.size());
  std::array<double, kTraitCount> mean{};
  for (const auto& essay : corpus) {
    for (std::size_t i = 0; i < kTraitCount; ++i) mean[i] += essay.labels.get(kAllTraits[i]);
  }
  for (std::size_t i = 0; i < kTraitCount; ++i) {
    mean[i] /= n;
    if (mean[i] == 0.0 || mean[i] == 1.0) {
      throw DomainError("trait '" + std::string(TraitName(kAllTraits[i])) +
                        "' has zero variance; correlation undefined");
    }
  }
  CorrelationMatrix corr{};
  for (std::size_t i = 0; i < kTraitCount; ++i) {
    corr[i][i] = 1.0;
    for (std::size_t j = i + 1; j < kTraitCount; ++j) {
      double cov = 0.0, vi = 0.0, vj = 0.0;
      for (const auto& essay : corpus) {
        double xi = essay.labels.get(kAllTraits[i]) - mean[i];
        double xj = essay.labels.get(kAllTraits[j]) - mean[j];
        cov += xi * xj;
        vi += xi * xi;
        vj += xj * xj;
      }
      double r = std::clamp(cov / std::sqrt(vi * vj), -1.0, 1.0);
      corr[i][j] = r;
      corr[j][i] = r;
    }
  }
  return corr;
}

std::array<std::size_t, 32> TraitIntersections(const Corpus& corpus) {
  std::array<std::size_t, 32> counts{};
  for (const auto& essay : corpus) counts[essay.labels.mask()]++;
  return counts;
}

CorpusStats ComputeStats(const Corpus& corpus) {
  CorpusStats stats;
  stats.distribution = LabelDistribution(corpus);
  stats.correlation = LabelCorrelation(corpus);
  stats.intersections = TraitIntersections(corpus);
  return stats;
}

std::string FormatStatsReport(const CorpusStats& stats, std::size_t corpus_size) {
  std::ostringstream out;
  out << "corpus.size=" << corpus_size << '\n';
  for (Trait t : kAllTraits) {
    const auto& c = stats.distribution[static_cast<std::size_t>(t)];
    out << "distribution." << TraitSymbol(t) << ".true=" << c.true_count << '\n';
    out << "distribution." << TraitSymbol(t) << ".false=" << c.false_count << '\n';
  }
  for (Trait a : kAllTraits) {
    for (Trait b : kAllTraits) {
      out << "correlation." << TraitSymbol(a) << '.' << TraitSymbol(b) << '='
          << io::FormatReal(stats.correlation[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
          << '\n';
    }
  }
  for (std::size_t mask = 0; mask < 32; ++mask) {
    out << "intersection." << mask << '=' << stats.intersections[mask] << '\n';
  }
  return out.str();
}

std::string FormatDistributionTable(const CorpusStats& stats) {
  std::ostringstream out;
  out << "trait\ttrue\tfalse\n";
  for (Trait t : kAllTraits) {
    const auto& c = stats.distribution[static_cast<std::size_t>(t)];
    out << TraitSymbol(t) << '\t' << c.true_count << '\t' << c.false_count << '\n';
  }
  return out.str();
}

std::string FormatCorrelationTable(const CorpusStats& stats) {
  std::ostringstream out;
  out << "trait";
  for (Trait t : kAllTraits) out << '\t' << TraitSymbol(t);
  out << '\n';
  for (Trait a : kAllTraits) {
    out << TraitSymbol(a);
    for (Trait b : kAllTraits) {
      out << '\t'
          << io::FormatReal(stats.correlation[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
    out << '\n';
  }
  return out.str();
}

std::string FormatIntersectionTable(const CorpusStats& stats) {
  std::ostringstream out;
  out << "mask\tO\tC\tE\tA\tN\tcount\n";
  for (std::size_t mask = 0; mask < 32; ++mask) {
    out << mask;
    for (std::size_t bit = 0; bit < kTraitCount; ++bit) out << '\t' << ((mask >> bit) & 1u);
    out << '\t' << stats.intersections[mask] << '\n';
  }
  return out.str();
}

}  // namespace kgapp

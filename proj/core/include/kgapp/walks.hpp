#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kgapp/graph.hpp"
#include "kgapp/random.hpp"

namespace kgapp {

// vertex, predicate, vertex, ... (odd length).
struct Walk {
  std::vector<std::string> tokens;

  friend bool operator==(const Walk&, const Walk&) = default;
  friend auto operator<=>(const Walk&, const Walk&) = default;
};

struct WalkOptions {
  int max_depth = 5;
  int walks_per_entity = 5;
  std::uint64_t seed = 0;
  // Start vertices are split across threads; each start vertex draws from
  // its own derived seed, so output is identical for any thread count.
  std::size_t threads = 1;
};

// One walk of at most `max_depth` hops. Each hop picks an outgoing edge
// uniformly; literals and sinks end the walk.
Walk RandomWalk(const KnowledgeGraph& graph, const Term& start, int max_depth, Rng& rng);

// Up to `walks_per_entity` distinct walks from every vertex with outgoing
// edges, grouped by start vertex in sorted order.
std::vector<Walk> GenerateWalks(const KnowledgeGraph& graph, const WalkOptions& options);

// True when every (vertex, predicate, vertex) step is a triple of `graph`.
bool IsValidPath(const KnowledgeGraph& graph, const Walk& walk);

// Walk corpus file: one walk per line, tokens separated by single spaces.
// Tokens escape '%', space, tab, CR and LF as %XX.
std::string EscapeToken(std::string_view token);
std::string UnescapeToken(std::string_view token);
std::string FormatWalks(const std::vector<Walk>& walks);
std::vector<Walk> ParseWalks(std::string_view text);

}  // namespace kgapp
